//! Sparse multivariate polynomials over the integers.
//!
//! Variables are named `x1, x2, ...`; the public API uses these 1-based
//! labels. Exponent vectors are stored with trailing zeros trimmed so that
//! polynomials over different variable counts compare and combine directly.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exponent vector; index 0 is `x1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    /// `x_var^power` with a 1-based variable label.
    pub fn var_pow(var: usize, power: u32) -> Self {
        assert!(var >= 1, "variables are labelled from 1");
        let mut m = Monomial(vec![0; var]);
        m.0[var - 1] = power;
        m.trim();
        m
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        let mut m = Monomial(exps);
        m.trim();
        m
    }

    fn trim(&mut self) {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
    }

    /// Exponent of the 1-based variable `var`.
    pub fn exponent(&self, var: usize) -> u32 {
        self.0.get(var - 1).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Exponents as `(var, power)` pairs with nonzero power, ascending.
    pub fn powers(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (i + 1, e))
    }

    pub fn max_var(&self) -> usize {
        self.0.len()
    }

    fn with_exponent(&self, var: usize, power: u32) -> Monomial {
        let mut v = self.0.clone();
        if v.len() < var {
            v.resize(var, 0);
        }
        v[var - 1] = power;
        Monomial::from_exponents(v)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let len = self.0.len().max(other.0.len());
        let v = (0..len)
            .map(|i| self.0.get(i).unwrap_or(&0) + other.0.get(i).unwrap_or(&0))
            .collect();
        Monomial(v)
    }
}

impl Ord for Monomial {
    /// Graded lexicographic order with `x1 > x2 > ...`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let len = self.0.len().max(other.0.len());
            for i in 0..len {
                let a = self.0.get(i).unwrap_or(&0);
                let b = other.0.get(i).unwrap_or(&0);
                match a.cmp(b) {
                    Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial with arbitrary-precision integer coefficients. No zero
/// coefficient is ever stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(Monomial::one(), c.into());
        p
    }

    /// The variable `x_var`.
    pub fn var(var: usize) -> Self {
        Polynomial::monomial(Monomial::var_pow(var, 1), BigInt::one())
    }

    pub fn monomial(m: Monomial, c: BigInt) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(m, c);
        p
    }

    /// `x_i - x_j`.
    pub fn linear(i: usize, j: usize) -> Self {
        let mut p = Polynomial::var(i);
        p.add_term(Monomial::var_pow(j, 1), -BigInt::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Monomial::one()).is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
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

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter().rev()
    }

    pub fn max_var(&self) -> usize {
        self.terms.keys().map(Monomial::max_var).max().unwrap_or(0)
    }

    /// Whether the polynomial mentions `x_var`.
    pub fn mentions(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.exponent(var) > 0)
    }

    /// Multiplies by `x_i - x_j`.
    pub fn mul_linear(&self, i: usize, j: usize) -> Polynomial {
        let xi = Monomial::var_pow(i, 1);
        let xj = Monomial::var_pow(j, 1);
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            out.add_term(m.mul(&xi), c.clone());
            out.add_term(m.mul(&xj), -c.clone());
        }
        out
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.mul(mono), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Polynomial {
        if k.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Replaces `x_from` by `x_to`.
    pub fn substitute(&self, from: usize, to: usize) -> Polynomial {
        if from == to {
            return self.clone();
        }
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(from);
            if e == 0 {
                out.add_term(m.clone(), c.clone());
            } else {
                let moved = m.with_exponent(from, 0);
                let te = moved.exponent(to) + e;
                out.add_term(moved.with_exponent(to, te), c.clone());
            }
        }
        out
    }

    /// Applies an injective relabelling of variables.
    pub fn rename(&self, map: &dyn Fn(usize) -> usize) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut exps: Vec<u32> = Vec::new();
            for (v, e) in m.powers() {
                let t = map(v);
                if exps.len() < t {
                    exps.resize(t, 0);
                }
                exps[t - 1] += e;
            }
            out.add_term(Monomial::from_exponents(exps), c.clone());
        }
        out
    }

    /// Exact quotient by `x_i - x_j`, or `None` when it does not divide.
    ///
    /// Synthetic division in the variable `x_i` with root `x_j`.
    pub fn div_linear(&self, i: usize, j: usize) -> Option<Polynomial> {
        if self.is_zero() {
            return Some(Polynomial::zero());
        }
        // Slice by the power of x_i.
        let mut slices: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exponent(i);
            slices
                .entry(e)
                .or_default()
                .add_term(m.with_exponent(i, 0), c.clone());
        }
        let top = *slices.keys().next_back().unwrap();
        if top == 0 {
            return None;
        }
        let xj = Monomial::var_pow(j, 1);
        let mut quotient = Polynomial::zero();
        let mut carry = Polynomial::zero();
        for k in (1..=top).rev() {
            let mut q = carry.mul_monomial(&xj);
            if let Some(s) = slices.get(&k) {
                q += s;
            }
            for (m, c) in &q.terms {
                quotient.add_term(m.with_exponent(i, k - 1), c.clone());
            }
            carry = q;
        }
        let mut remainder = carry.mul_monomial(&xj);
        if let Some(s) = slices.get(&0) {
            remainder += s;
        }
        remainder.is_zero().then_some(quotient)
    }

    /// Exact quotient by `x_var`, or `None`.
    pub fn div_var(&self, var: usize) -> Option<Polynomial> {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e == 0 {
                return None;
            }
            out.terms.insert(m.with_exponent(var, e - 1), c.clone());
        }
        Some(out)
    }

    /// Evaluates at `point[k] = x_{k+1}`; missing coordinates are an error
    /// for any variable that occurs.
    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for (v, e) in m.powers() {
                t *= num_traits::pow(point[v - 1].clone(), e as usize);
            }
            acc += t;
        }
        acc
    }

    /// Integer evaluation used by the probabilistic pre-filter.
    pub fn eval_int(&self, point: &[BigInt]) -> BigInt {
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.powers() {
                t *= num_traits::pow(point[v - 1].clone(), e as usize);
            }
            acc += t;
        }
        acc
    }

    /// The leading coefficient is negative.
    pub fn is_negative_leading(&self) -> bool {
        self.terms().next().is_some_and(|(_, c)| c.is_negative())
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[i64]) -> Vec<BigRational> {
        v.iter()
            .map(|&x| BigRational::from_integer(x.into()))
            .collect()
    }

    #[test]
    fn graded_lex_puts_x1_first() {
        let p = &Polynomial::var(4) + &(&Polynomial::var(1) * &Polynomial::var(1));
        let mons: Vec<_> = p.terms().map(|(m, _)| m.clone()).collect();
        assert_eq!(mons[0], Monomial::var_pow(1, 2));
        assert!(Monomial::var_pow(1, 1) > Monomial::var_pow(4, 1));
        assert!(Monomial::var_pow(4, 1) > Monomial::one());
    }

    #[test]
    fn linear_division_roundtrip() {
        let a = Polynomial::linear(1, 4);
        let b = Polynomial::linear(2, 3);
        let p = &a * &b;
        assert_eq!(p.div_linear(2, 3), Some(a.clone()));
        assert_eq!(p.div_linear(1, 4), Some(b));
        assert_eq!(p.div_linear(1, 2), None);
        assert_eq!(Polynomial::one().div_linear(1, 2), None);
    }

    #[test]
    fn cancelling_terms_are_dropped() {
        let p = &Polynomial::linear(1, 2) + &Polynomial::linear(2, 1);
        assert!(p.is_zero());
    }

    #[test]
    fn substitution_merges_exponents() {
        let p = &Polynomial::var(2) * &Polynomial::var(3);
        let s = p.substitute(3, 2);
        assert_eq!(
            s,
            Polynomial::monomial(Monomial::var_pow(2, 2), BigInt::one())
        );
        assert_eq!(s.eval(&q(&[0, 5, 0])), BigRational::from_integer(25.into()));
    }
}
