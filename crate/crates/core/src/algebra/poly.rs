//! Exact Laurent polynomials in the bracket variables `A`, `B`, `d`, and
//! one-variable Laurent polynomials used for the reduced bracket and the
//! Jones polynomial.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// Exponents of `A`, `B` and `d` in a monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub a: i64,
    pub b: i64,
    pub d: i64,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { a: 0, b: 0, d: 0 };

    pub const fn new(a: i64, b: i64, d: i64) -> Self {
        Self { a, b, d }
    }

    fn times(self, other: Monomial) -> Monomial {
        Monomial::new(self.a + other.a, self.b + other.b, self.d + other.d)
    }
}

/// `Σ c · A^a B^b d^k` with integer coefficients; zero coefficients are never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BracketPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl BracketPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, Monomial::ONE)
    }

    pub fn monomial(coeff: impl Into<BigInt>, m: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m, coeff.into());
        p
    }

    pub fn a() -> Self {
        Self::monomial(1, Monomial::new(1, 0, 0))
    }

    pub fn b() -> Self {
        Self::monomial(1, Monomial::new(0, 1, 0))
    }

    pub fn d() -> Self {
        Self::monomial(1, Monomial::new(0, 0, 1))
    }

    /// Builds a polynomial from `(coefficient, a, b, d)` tuples.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, i64, i64, i64)>,
    {
        let mut p = Self::zero();
        for (c, a, b, d) in terms {
            p.add_term(Monomial::new(a, b, d), BigInt::from(c));
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: Monomial) -> BigInt {
        self.terms.get(&m).cloned().unwrap_or_default()
    }

    /// Terms in canonical order: descending lexicographic on `(a, b, d)`.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter().rev()
    }

    /// True when no exponent is negative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|m| m.a >= 0 && m.b >= 0 && m.d >= 0)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplies by the monomial `A^a B^b d^k`.
    pub fn shift(&self, by: Monomial) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.times(by), c.clone()))
                .collect(),
        }
    }

    /// The polynomial with the roles of `A` and `B` exchanged.
    pub fn swap_ab(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial::new(m.b, m.a, m.d), c.clone()))
                .collect(),
        }
    }

    /// Evaluates at `B = A^{-1}`, `d = -A^2 - A^{-2}`, giving a Laurent
    /// polynomial in `A`.
    pub fn reduce(&self) -> Laurent {
        let loop_value = Laurent::from_terms([(-1, 2), (-1, -2)]);
        let loop_inverse_needed = self.terms.keys().any(|m| m.d < 0);
        assert!(
            !loop_inverse_needed,
            "reduced bracket undefined for negative powers of d"
        );
        let max_d = self.terms.keys().map(|m| m.d).max().unwrap_or(0);
        let mut powers = vec![Laurent::one()];
        for k in 1..=max_d as usize {
            let next = &powers[k - 1] * &loop_value;
            powers.push(next);
        }
        let mut out = Laurent::zero();
        for (m, c) in &self.terms {
            let factor = powers[m.d as usize].shift(m.a - m.b);
            out += &factor.scale(c);
        }
        out
    }
}

impl fmt::Debug for BracketPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BracketPoly({self})")
    }
}

fn write_factor(out: &mut Vec<String>, var: &str, e: i64) {
    match e {
        0 => {}
        1 => out.push(var.to_string()),
        _ => out.push(format!("{var}^{e}")),
    }
}

fn write_signed_terms<'a, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: Iterator<Item = (&'a BigInt, String)>,
{
    let mut first = true;
    for (c, body) in terms {
        let magnitude = c.abs();
        if first {
            if c.is_negative() {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if c.is_negative() { " - " } else { " + " })?;
        }
        first = false;
        match (magnitude.is_one(), body.is_empty()) {
            (_, true) => write!(f, "{magnitude}")?,
            (true, false) => f.write_str(&body)?,
            (false, false) => write!(f, "{magnitude}*{body}")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for BracketPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_signed_terms(
            f,
            self.terms().map(|(m, c)| {
                let mut parts = Vec::new();
                write_factor(&mut parts, "A", m.a);
                write_factor(&mut parts, "B", m.b);
                write_factor(&mut parts, "d", m.d);
                (c, parts.join("*"))
            }),
        )
    }
}

impl AddAssign<&BracketPoly> for BracketPoly {
    fn add_assign(&mut self, rhs: &BracketPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl Add for &BracketPoly {
    type Output = BracketPoly;
    fn add(self, rhs: &BracketPoly) -> BracketPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for BracketPoly {
    type Output = BracketPoly;
    fn add(mut self, rhs: BracketPoly) -> BracketPoly {
        self += &rhs;
        self
    }
}

impl Neg for &BracketPoly {
    type Output = BracketPoly;
    fn neg(self) -> BracketPoly {
        BracketPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Sub for &BracketPoly {
    type Output = BracketPoly;
    fn sub(self, rhs: &BracketPoly) -> BracketPoly {
        self + &(-rhs)
    }
}

impl Mul for &BracketPoly {
    type Output = BracketPoly;
    fn mul(self, rhs: &BracketPoly) -> BracketPoly {
        let mut out = BracketPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.times(*m2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for BracketPoly {
    type Output = BracketPoly;
    fn mul(self, rhs: BracketPoly) -> BracketPoly {
        &self * &rhs
    }
}

/// `Σ c · x^e` with integer exponents.
///
/// Used with `x = A` for reduced brackets and with `x = t^{1/4}` for Jones
/// polynomials, so that quarter powers of `t` stay integral.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Laurent {
    terms: BTreeMap<i64, BigInt>,
}

/// Reduced bracket and Jones polynomials share this representation.
pub type QuarterLaurent = Laurent;

impl Laurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_terms([(1, 0)])
    }

    /// Builds a polynomial from `(coefficient, exponent)` pairs.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, i64)>,
    {
        let mut p = Self::zero();
        for (c, e) in terms {
            p.add_term(e, BigInt::from(c));
        }
        p
    }

    pub fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms from the highest exponent down.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().rev().map(|(e, c)| (*e, c))
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn shift(&self, by: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + by, c.clone())).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            out.add_term(*e, c * k);
        }
        out
    }

    /// `p(x^{-1})`.
    pub fn invert_variable(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Normalizes a reduced bracket `r(A)` of a graph with `n` vertices,
    /// `looped` of them looped, into `(-1)^n t^{(3n-6ℓ)/4} r(t^{-1/4})`,
    /// expressed in `q = t^{1/4}`.
    pub fn jones_normalize(&self, n: usize, looped: usize) -> Self {
        let shift = 3 * n as i64 - 6 * looped as i64;
        let mut out = self.invert_variable().shift(shift);
        if n % 2 == 1 {
            out = -&out;
        }
        out
    }

    /// Renders in `t` with exponents `e/4` reduced, e.g. `t^{-1/2} - t^3`.
    pub fn display_in_t(&self) -> impl fmt::Display + '_ {
        QuarterT(self)
    }
}

struct QuarterT<'a>(&'a Laurent);

fn t_power(e: i64) -> String {
    if e == 0 {
        return String::new();
    }
    if e % 4 == 0 {
        return match e / 4 {
            1 => "t".to_string(),
            k => format!("t^{k}"),
        };
    }
    let g = gcd(e.unsigned_abs(), 4) as i64;
    format!("t^{{{}/{}}}", e / g, 4 / g)
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl fmt::Display for QuarterT<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_signed_terms(f, self.0.terms().map(|(e, c)| (c, t_power(e))))
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_signed_terms(
            f,
            self.terms().map(|(e, c)| {
                let mut parts = Vec::new();
                write_factor(&mut parts, "A", e);
                (c, parts.concat())
            }),
        )
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({self})")
    }
}

impl AddAssign<&Laurent> for Laurent {
    fn add_assign(&mut self, rhs: &Laurent) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        self + &(-rhs)
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}
