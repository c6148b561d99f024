//! Exact arithmetic in the real field Q(√2, √3, √5).
//!
//! Elements are rational coordinate vectors on the basis
//! {1, √2, √3, √5, √6, √10, √15, √30}, which is closed under
//! multiplication (√a·√b = g·√(ab/g²) with g = gcd(a, b)). Equality is
//! coordinate-wise and signs are decided by interval refinement over the
//! rationals, so every comparison is exact.
//!
//! Internally the eight coordinates share one positive denominator and are
//! normalized to lowest terms, which keeps multiplication free of
//! per-coordinate gcd reductions on the hot paths.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::bigint::{BigInt, Sign};
use num::{BigRational, Integer, One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational, the coordinate type of [`FieldElement`].
pub type Rational = BigRational;

/// Radicands of the eight basis elements, in coordinate order.
pub const BASIS_RADICANDS: [u32; 8] = [1, 2, 3, 5, 6, 10, 15, 30];

/// Initial precision (bits) of the √d intervals; doubled per refinement round.
const START_BITS: u32 = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("label {0} has no exact cosine in Q(\u{221a}2, \u{221a}3, \u{221a}5)")]
    UnsupportedLabel(u32),
}

/// An element of Q(√2, √3, √5), stored canonically.
///
/// Two elements are equal iff their coordinate vectors are equal; an element
/// is zero iff every coordinate is zero (the basis is linearly independent
/// over Q).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    nums: [BigInt; 8],
    den: BigInt, // > 0, gcd(nums, den) = 1
}

fn zero_nums() -> [BigInt; 8] {
    std::array::from_fn(|_| BigInt::zero())
}

fn basis_index(radicand: u32) -> usize {
    match radicand {
        1 => 0,
        2 => 1,
        3 => 2,
        5 => 3,
        6 => 4,
        10 => 5,
        15 => 6,
        30 => 7,
        _ => unreachable!("non-basis radicand {radicand}"),
    }
}

impl FieldElement {
    fn normalized(mut nums: [BigInt; 8], mut den: BigInt) -> Self {
        debug_assert!(!den.is_zero());
        if den.sign() == Sign::Minus {
            den = -den;
            for n in nums.iter_mut() {
                *n = -std::mem::take(n);
            }
        }
        if !den.is_one() {
            let mut g = den.clone();
            for n in &nums {
                if g.is_one() {
                    break;
                }
                if !n.is_zero() {
                    g = g.gcd(n);
                }
            }
            if !g.is_one() {
                if nums.iter().all(BigInt::is_zero) {
                    den = BigInt::one();
                } else {
                    den /= &g;
                    for n in nums.iter_mut() {
                        *n /= &g;
                    }
                }
            }
        }
        FieldElement { nums, den }
    }

    pub fn zero() -> Self {
        FieldElement {
            nums: zero_nums(),
            den: BigInt::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        let mut nums = zero_nums();
        nums[0] = BigInt::from(n);
        FieldElement {
            nums,
            den: BigInt::one(),
        }
    }

    pub fn from_rational(r: Rational) -> Self {
        let (numer, denom) = r.into_raw();
        let mut nums = zero_nums();
        nums[0] = numer;
        Self::normalized(nums, denom)
    }

    /// n/d as a field element. Panics if d = 0.
    pub fn from_ratio(n: i64, d: i64) -> Self {
        assert!(d != 0);
        let mut nums = zero_nums();
        nums[0] = BigInt::from(n);
        Self::normalized(nums, BigInt::from(d))
    }

    /// √d for a squarefree divisor d of 30; `None` otherwise.
    pub fn sqrt(radicand: u32) -> Option<Self> {
        if !BASIS_RADICANDS.contains(&radicand) {
            return None;
        }
        let mut nums = zero_nums();
        nums[basis_index(radicand)] = BigInt::one();
        Some(FieldElement {
            nums,
            den: BigInt::one(),
        })
    }

    pub fn from_coords(coords: [Rational; 8]) -> Self {
        let mut den = BigInt::one();
        for c in &coords {
            den = den.lcm(c.denom());
        }
        let nums = std::array::from_fn(|i| {
            let c = &coords[i];
            c.numer() * (&den / c.denom())
        });
        Self::normalized(nums, den)
    }

    /// The rational coordinates on {1, √2, √3, √5, √6, √10, √15, √30}.
    pub fn coords(&self) -> [Rational; 8] {
        std::array::from_fn(|i| self.coord(i))
    }

    /// The i-th coordinate, in lowest terms.
    pub fn coord(&self, i: usize) -> Rational {
        Rational::new(self.nums[i].clone(), self.den.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.nums.iter().all(BigInt::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.nums[0].is_one() && self.nums[1..].iter().all(BigInt::is_zero)
    }

    /// True iff the element lies in Q (all radical coordinates vanish).
    pub fn is_rational(&self) -> bool {
        self.nums[1..].iter().all(BigInt::is_zero)
    }

    /// The rational part, exact when `is_rational()`.
    pub fn rational_part(&self) -> Rational {
        self.coord(0)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let nums = std::array::from_fn(|i| &self.nums[i] * r.numer());
        Self::normalized(nums, &self.den * r.denom())
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = FieldElement::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicative inverse, by solving the 8×8 rational linear system of
    /// multiplication-by-self on the basis. Rational and quadratic elements
    /// take a short cut (reciprocal, conjugate) instead of the full solve.
    pub fn inverse(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if self.is_rational() {
            return Ok(FieldElement::from_rational(self.rational_part().recip()));
        }
        let radical_support: Vec<usize> = (1..8).filter(|&i| !self.nums[i].is_zero()).collect();
        if let [i] = radical_support.as_slice() {
            // (a + b√d)⁻¹ = (a − b√d) / (a² − b²d), coordinates over den²
            let (a, b) = (&self.nums[0], &self.nums[*i]);
            let d = BigInt::from(BASIS_RADICANDS[*i]);
            let norm = a * a - b * b * d; // × den⁻²; nonzero since √d ∉ Q
            let mut nums = zero_nums();
            nums[0] = a * &self.den;
            nums[*i] = -(b * &self.den);
            // (a·den − b·den·√d) / (a² − b²d)
            return Ok(Self::normalized(nums, norm));
        }
        // Column j holds the coordinates of self·b_j.
        let mut m: Vec<[Rational; 9]> =
            (0..8).map(|_| std::array::from_fn(|_| Rational::zero())).collect();
        for j in 0..8 {
            let col = self.mul_basis(j);
            for (i, c) in col.into_iter().enumerate() {
                m[i][j] = c;
            }
        }
        m[0][8] = Rational::one();

        for k in 0..8 {
            let pivot_row = (k..8)
                .find(|&r| !m[r][k].is_zero())
                .expect("multiplication by a nonzero field element is invertible");
            m.swap(k, pivot_row);
            let inv = m[k][k].recip();
            for j in k..9 {
                m[k][j] = &m[k][j] * &inv;
            }
            for i in 0..8 {
                if i != k && !m[i][k].is_zero() {
                    let factor = m[i][k].clone();
                    for j in k..9 {
                        let delta = &factor * &m[k][j];
                        m[i][j] = &m[i][j] - &delta;
                    }
                }
            }
        }
        let coords = std::array::from_fn(|i| m[i][8].clone());
        Ok(FieldElement::from_coords(coords))
    }

    // Inverse via the product of Galois conjugates over the subfield the
    // element actually lives in (≤ 7 multiplications, usually 1 or 3).
    // Same value as `inverse`, cheaper on sparse elements; used by the
    // elimination engines.
    pub(crate) fn fast_inverse(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if self.is_rational() {
            return Ok(FieldElement::from_rational(self.rational_part().recip()));
        }
        let mut primes: Vec<u32> = Vec::new();
        for i in 1..8 {
            if !self.nums[i].is_zero() {
                for p in [2u32, 3, 5] {
                    if BASIS_RADICANDS[i] % p == 0 && !primes.contains(&p) {
                        primes.push(p);
                    }
                }
            }
        }
        // conjugate σ_S negates every coordinate whose radicand has an odd
        // number of prime factors in S
        let conjugate = |mask: u32| -> FieldElement {
            let nums = std::array::from_fn(|i| {
                let mut flips = 0;
                for (t, &p) in primes.iter().enumerate() {
                    if mask & (1 << t) != 0 && BASIS_RADICANDS[i] % p == 0 {
                        flips += 1;
                    }
                }
                if flips % 2 == 1 {
                    -self.nums[i].clone()
                } else {
                    self.nums[i].clone()
                }
            });
            FieldElement {
                nums,
                den: self.den.clone(),
            }
        };
        let mut product = conjugate(1);
        for mask in 2..(1u32 << primes.len()) {
            product = &product * &conjugate(mask);
        }
        let norm = self * &product;
        debug_assert!(norm.is_rational(), "norm of a field element is rational");
        Ok(product.scale(&norm.rational_part().recip()))
    }

    // Coordinates of self·b_j.
    fn mul_basis(&self, j: usize) -> [Rational; 8] {
        let mut out: [Rational; 8] = std::array::from_fn(|_| Rational::zero());
        let dj = BASIS_RADICANDS[j];
        for i in 0..8 {
            if self.nums[i].is_zero() {
                continue;
            }
            let di = BASIS_RADICANDS[i];
            let g = di.gcd(&dj);
            let target = basis_index((di / g) * (dj / g));
            let mut t = self.coord(i);
            if g != 1 {
                t *= Rational::from_integer(BigInt::from(g));
            }
            out[target] += t;
        }
        out
    }

    /// Exact sign: −1, 0 or +1.
    ///
    /// Zero is decided by the coordinate test; a nonzero sign by interval
    /// refinement of the radicals, which terminates because the element is
    /// exactly nonzero.
    pub fn sign(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        if self.is_rational() {
            return if self.nums[0].sign() == Sign::Plus { 1 } else { -1 };
        }
        let mut bits = START_BITS;
        loop {
            let (lo, hi) = self.interval(bits);
            if lo.is_positive() {
                return 1;
            }
            if hi.is_negative() {
                return -1;
            }
            bits *= 2;
        }
    }

    /// An enclosing rational interval with the radicals approximated to
    /// `bits` bits.
    pub fn interval(&self, bits: u32) -> (Rational, Rational) {
        // Σ nums_i·√d_i bracketed with integer square roots, then ÷ den
        let scale = BigInt::one() << bits;
        let mut lo = &self.nums[0] * &scale;
        let mut hi = lo.clone();
        for i in 1..8 {
            if self.nums[i].is_zero() {
                continue;
            }
            let root = (BigInt::from(BASIS_RADICANDS[i]) << (2 * bits)).sqrt();
            let (slo, shi) = (&self.nums[i] * &root, &self.nums[i] * (&root + 1));
            if self.nums[i].sign() == Sign::Plus {
                lo += slo;
                hi += shi;
            } else {
                lo += shi;
                hi += slo;
            }
        }
        let denom = &self.den * &scale;
        (
            Rational::new(lo, denom.clone()),
            Rational::new(hi, denom),
        )
    }

    /// Decimal approximation to `digits` significant digits, correctly
    /// rounded (round half to even).
    pub fn to_decimal(&self, digits: usize) -> String {
        assert!(digits >= 1, "need at least one significant digit");
        if self.is_zero() {
            return "0".to_string();
        }
        let negative = self.sign() < 0;
        let abs = if negative { -self } else { self.clone() };
        let mut exponent = abs.floor_log10();
        let shift = digits as i64 - 1 - exponent;
        let scaled = abs.scale(&pow10(shift));
        let mut significand = scaled.round_half_even();
        let overflow = BigInt::from(10).pow(digits as u32);
        if significand == overflow {
            // 9.99… rounded up to the next decade
            significand = &overflow / BigInt::from(10);
            exponent += 1;
        }
        format_decimal(negative, &significand.to_string(), exponent, digits)
    }

    // floor(log10 |self|) for self > 0, decided exactly.
    fn floor_log10(&self) -> i64 {
        let mut bits = START_BITS;
        loop {
            let (lo, hi) = self.interval(bits);
            if lo.is_positive() {
                let el = floor_log10_rational(&lo);
                let eh = floor_log10_rational(&hi);
                if el == eh {
                    return el;
                }
                // The interval straddles a power of ten; it may be hit exactly.
                for t in el + 1..=eh {
                    if (self - &FieldElement::from_rational(pow10(t))).is_zero() {
                        return t;
                    }
                }
            }
            bits *= 2;
        }
    }

    // Nearest integer, ties to even; self must be ≥ 0.
    fn round_half_even(&self) -> BigInt {
        let floor = self.floor_exact();
        let frac = self - &FieldElement::from_rational(Rational::from_integer(floor.clone()));
        let half = FieldElement::from_ratio(1, 2);
        match (&frac - &half).sign() {
            -1 => floor,
            1 => floor + 1,
            _ => {
                if floor.is_even() {
                    floor
                } else {
                    floor + 1
                }
            }
        }
    }

    fn floor_exact(&self) -> BigInt {
        if self.is_rational() {
            return self.rational_part().floor().to_integer();
        }
        let mut bits = START_BITS;
        loop {
            let (lo, hi) = self.interval(bits);
            let fl = lo.floor().to_integer();
            let fh = hi.floor().to_integer();
            if fl == fh {
                return fl;
            }
            // Candidate integers inside the interval; exact hits only.
            if &fh - &fl <= BigInt::from(4) {
                let mut t: BigInt = &fl + 1;
                while t <= fh {
                    if (self - &FieldElement::from_rational(Rational::from_integer(t.clone())))
                        .is_zero()
                    {
                        return t;
                    }
                    t += 1;
                }
            }
            bits *= 2;
        }
    }

    /// Rendering on the radical basis: `a0 + a1·r2 + … + a7·r30`,
    /// zero terms omitted, coefficients in lowest terms.
    pub fn to_radical_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for i in 0..8 {
            if self.nums[i].is_zero() {
                continue;
            }
            let c = self.coord(i);
            let negative = c.is_negative();
            let abs = c.abs();
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if i == 0 {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&format!("r{}", BASIS_RADICANDS[i]));
            } else {
                out.push_str(&format!("{}\u{b7}r{}", abs, BASIS_RADICANDS[i]));
            }
        }
        out
    }
}

fn pow10(exp: i64) -> Rational {
    let p = BigInt::from(10).pow(exp.unsigned_abs() as u32);
    if exp >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

fn floor_log10_rational(r: &Rational) -> i64 {
    debug_assert!(r.is_positive());
    if *r >= Rational::one() {
        let int = r.floor().to_integer();
        int.to_string().len() as i64 - 1
    } else {
        let inv = r.recip();
        let li = floor_log10_rational(&inv);
        if pow10(li) == inv {
            -li
        } else {
            -li - 1
        }
    }
}

fn format_decimal(negative: bool, digits: &str, exponent: i64, sig: usize) -> String {
    debug_assert_eq!(digits.len(), sig);
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if exponent >= sig as i64 - 1 {
        out.push_str(digits);
        for _ in 0..(exponent - sig as i64 + 1) {
            out.push('0');
        }
    } else if exponent >= 0 {
        let point = (exponent + 1) as usize;
        out.push_str(&digits[..point]);
        out.push('.');
        out.push_str(&digits[point..]);
    } else {
        out.push_str("0.");
        for _ in 0..(-exponent - 1) {
            out.push('0');
        }
        out.push_str(digits);
    }
    out
}

/// cos(π/m) exactly, for labels m ∈ {2, 3, 4, 5, 6}.
pub fn cos_label(m: u32) -> Result<FieldElement, FieldError> {
    match m {
        2 => Ok(FieldElement::zero()),
        3 => Ok(FieldElement::from_ratio(1, 2)),
        4 => {
            let mut nums = zero_nums();
            nums[basis_index(2)] = BigInt::one();
            Ok(FieldElement {
                nums,
                den: BigInt::from(2),
            })
        }
        5 => {
            let mut nums = zero_nums();
            nums[0] = BigInt::one();
            nums[basis_index(5)] = BigInt::one();
            Ok(FieldElement {
                nums,
                den: BigInt::from(4),
            })
        }
        6 => {
            let mut nums = zero_nums();
            nums[basis_index(3)] = BigInt::one();
            Ok(FieldElement {
                nums,
                den: BigInt::from(2),
            })
        }
        other => Err(FieldError::UnsupportedLabel(other)),
    }
}

/// Rational approximation of cos(π/m) with absolute error below
/// 10^-(digits+6), via fixed-point Machin/Taylor evaluation.
pub fn rational_cos_pi_over(m: u32, digits: u32) -> Rational {
    assert!(m >= 2);
    let guard = digits + 12;
    let scale = BigInt::from(10).pow(guard);
    let pi = pi_scaled(&scale);
    let x = pi / BigInt::from(m); // ≈ (π/m)·10^guard
    let x2 = &x * &x;
    let scale2 = &scale * &scale;

    let mut acc = scale.clone();
    let mut term = scale.clone();
    let mut k: u32 = 0;
    loop {
        k += 1;
        term = (&term * &x2) / &scale2;
        term /= BigInt::from((2 * k - 1) * (2 * k));
        if term.is_zero() {
            break;
        }
        if k % 2 == 1 {
            acc -= &term;
        } else {
            acc += &term;
        }
    }
    Rational::new(acc, scale)
}

// π·scale via Machin's formula, accurate to a few ulp.
fn pi_scaled(scale: &BigInt) -> BigInt {
    BigInt::from(16) * atan_inv_scaled(5, scale) - BigInt::from(4) * atan_inv_scaled(239, scale)
}

// arctan(1/x)·scale by the alternating series, floor-rounded per term.
fn atan_inv_scaled(x: u32, scale: &BigInt) -> BigInt {
    let x2 = BigInt::from(x) * BigInt::from(x);
    let mut power = scale / BigInt::from(x);
    let mut acc = power.clone();
    let mut k: u32 = 0;
    loop {
        power = &power / &x2;
        k += 1;
        let term = &power / BigInt::from(2 * k + 1);
        if term.is_zero() {
            break;
        }
        if k % 2 == 1 {
            acc -= &term;
        } else {
            acc += &term;
        }
    }
    acc
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_radical_string())
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_radical_string())
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.den == rhs.den {
            let nums = std::array::from_fn(|i| &self.nums[i] + &rhs.nums[i]);
            return FieldElement::normalized(nums, self.den.clone());
        }
        let nums = std::array::from_fn(|i| {
            &self.nums[i] * &rhs.den + &rhs.nums[i] * &self.den
        });
        FieldElement::normalized(nums, &self.den * &rhs.den)
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return -rhs;
        }
        if self.den == rhs.den {
            let nums = std::array::from_fn(|i| &self.nums[i] - &rhs.nums[i]);
            return FieldElement::normalized(nums, self.den.clone());
        }
        let nums = std::array::from_fn(|i| {
            &self.nums[i] * &rhs.den - &rhs.nums[i] * &self.den
        });
        FieldElement::normalized(nums, &self.den * &rhs.den)
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        let mut nums = zero_nums();
        let mut any = false;
        for i in 0..8 {
            if self.nums[i].is_zero() {
                continue;
            }
            let di = BASIS_RADICANDS[i];
            for j in 0..8 {
                if rhs.nums[j].is_zero() {
                    continue;
                }
                any = true;
                let dj = BASIS_RADICANDS[j];
                let g = di.gcd(&dj);
                let target = basis_index((di / g) * (dj / g));
                let mut t = &self.nums[i] * &rhs.nums[j];
                if g != 1 {
                    t *= BigInt::from(g);
                }
                nums[target] += t;
            }
        }
        if !any {
            return FieldElement::zero();
        }
        FieldElement::normalized(nums, &self.den * &rhs.den)
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        let nums = std::array::from_fn(|i| -self.nums[i].clone());
        FieldElement {
            nums,
            den: self.den.clone(),
        }
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: FieldElement) -> FieldElement {
        &self + &rhs
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: FieldElement) -> FieldElement {
        &self - &rhs
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: FieldElement) -> FieldElement {
        &self * &rhs
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}
