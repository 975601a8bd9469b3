//! Rational functions whose denominators are products of linear
//! differences `(x_i - x_j)` and single variables `x_i`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::{Monomial, Polynomial};
use crate::error::{GreeneError, Result};

/// An irreducible denominator factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Factor {
    /// `x_i - x_j` with `i < j`.
    Diff(usize, usize),
    /// `x_i`, produced when clearing `1 - x_i/x_j` style factors.
    Var(usize),
}

impl Factor {
    pub fn as_poly(&self) -> Polynomial {
        match *self {
            Factor::Diff(i, j) => Polynomial::linear(i, j),
            Factor::Var(i) => Polynomial::var(i),
        }
    }

    fn eval_int(&self, point: &[BigInt]) -> BigInt {
        match *self {
            Factor::Diff(i, j) => &point[i - 1] - &point[j - 1],
            Factor::Var(i) => point[i - 1].clone(),
        }
    }

    fn eval(&self, point: &[BigRational]) -> BigRational {
        match *self {
            Factor::Diff(i, j) => &point[i - 1] - &point[j - 1],
            Factor::Var(i) => point[i - 1].clone(),
        }
    }

    fn max_var(&self) -> usize {
        match *self {
            Factor::Diff(_, j) => j,
            Factor::Var(i) => i,
        }
    }
}

/// Oriented linear difference: returns the canonical factor and whether
/// the orientation flipped the sign.
pub fn oriented(i: usize, j: usize) -> (Factor, bool) {
    assert_ne!(i, j, "x_i - x_i is not a valid factor");
    if i < j {
        (Factor::Diff(i, j), false)
    } else {
        (Factor::Diff(j, i), true)
    }
}

/// Exact rational function `num / prod(den)`.
///
/// The overall sign lives in the numerator; denominator factors are always
/// canonically oriented. Zero is `0 / 1`. Every constructor and arithmetic
/// operation cancels denominator factors that divide the numerator, so
/// values stay in lowest terms with respect to the factor basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFrac {
    num: Polynomial,
    den: BTreeMap<Factor, u32>,
}

/// Operation selector for [`frac_combine`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FracOp {
    Add,
    Sub,
    Mul,
    /// Negates the first operand; the second is ignored.
    Neg,
}

pub fn frac_combine(op: FracOp, a: &RatFrac, b: &RatFrac) -> RatFrac {
    match op {
        FracOp::Add => a.add(b),
        FracOp::Sub => a.sub(b),
        FracOp::Mul => a.mul(b),
        FracOp::Neg => a.neg(),
    }
}

impl RatFrac {
    pub fn zero() -> Self {
        RatFrac {
            num: Polynomial::zero(),
            den: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        RatFrac::from_poly(Polynomial::one())
    }

    pub fn from_poly(num: Polynomial) -> Self {
        RatFrac {
            num,
            den: BTreeMap::new(),
        }
    }

    /// Builds `num / prod(den)` and cancels what divides.
    pub fn new(num: Polynomial, den: impl IntoIterator<Item = (Factor, u32)>) -> Self {
        if num.is_zero() {
            return RatFrac::zero();
        }
        let mut map = BTreeMap::new();
        for (f, m) in den {
            if m > 0 {
                *map.entry(f).or_insert(0) += m;
            }
        }
        let mut f = RatFrac { num, den: map };
        f.cancel();
        f
    }

    /// `1 / (x_i - x_j)` for any `i != j`.
    pub fn inv_diff(i: usize, j: usize) -> Self {
        let (f, flip) = oriented(i, j);
        let num = if flip {
            Polynomial::constant(-1)
        } else {
            Polynomial::one()
        };
        RatFrac::new(num, [(f, 1)])
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    /// Denominator factors with multiplicities, ascending.
    pub fn denominator(&self) -> impl Iterator<Item = (Factor, u32)> + '_ {
        self.den.iter().map(|(f, m)| (*f, *m))
    }

    pub fn den_poly(&self) -> Polynomial {
        let mut p = Polynomial::one();
        for (f, m) in &self.den {
            let fp = f.as_poly();
            for _ in 0..*m {
                p = &p * &fp;
            }
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn max_var(&self) -> usize {
        let d = self.den.keys().map(Factor::max_var).max().unwrap_or(0);
        d.max(self.num.max_var())
    }

    fn cancel(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let factors: Vec<Factor> = self.den.keys().copied().collect();
        for f in factors {
            loop {
                let m = self.den[&f];
                if m == 0 {
                    break;
                }
                let q = match f {
                    Factor::Diff(i, j) => self.num.div_linear(i, j),
                    Factor::Var(i) => self.num.div_var(i),
                };
                match q {
                    Some(q) => {
                        self.num = q;
                        *self.den.get_mut(&f).unwrap() -= 1;
                    }
                    None => break,
                }
            }
        }
        self.den.retain(|_, m| *m > 0);
    }

    /// Least common multiple of the two factor multisets.
    fn lcm_den(a: &BTreeMap<Factor, u32>, b: &BTreeMap<Factor, u32>) -> BTreeMap<Factor, u32> {
        let mut l = a.clone();
        for (f, m) in b {
            let e = l.entry(*f).or_insert(0);
            *e = (*e).max(*m);
        }
        l
    }

    /// Numerator rescaled to the denominator `target`, which must be a
    /// multiple of ours.
    fn num_over(&self, target: &BTreeMap<Factor, u32>) -> Polynomial {
        let mut p = self.num.clone();
        for (f, m) in target {
            let have = self.den.get(f).copied().unwrap_or(0);
            for _ in have..*m {
                p = match *f {
                    Factor::Diff(i, j) => p.mul_linear(i, j),
                    Factor::Var(i) => p.mul_monomial(&Monomial::var_pow(i, 1)),
                };
            }
        }
        p
    }

    pub fn add(&self, other: &RatFrac) -> RatFrac {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let l = Self::lcm_den(&self.den, &other.den);
        let num = &self.num_over(&l) + &other.num_over(&l);
        RatFrac::new(num, l)
    }

    pub fn neg(&self) -> RatFrac {
        RatFrac {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &RatFrac) -> RatFrac {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFrac) -> RatFrac {
        if self.is_zero() || other.is_zero() {
            return RatFrac::zero();
        }
        let mut den = self.den.clone();
        for (f, m) in &other.den {
            *den.entry(*f).or_insert(0) += m;
        }
        RatFrac::new(&self.num * &other.num, den)
    }

    pub fn mul_poly(&self, p: &Polynomial) -> RatFrac {
        RatFrac::new(&self.num * p, self.den.clone())
    }

    /// Sum of many fractions by balanced pairwise addition.
    pub fn sum<I: IntoIterator<Item = RatFrac>>(items: I) -> RatFrac {
        let mut layer: Vec<RatFrac> = items.into_iter().collect();
        if layer.is_empty() {
            return RatFrac::zero();
        }
        while layer.len() > 1 {
            let mut next = Vec::with_capacity(layer.len().div_ceil(2));
            let mut it = layer.into_iter();
            while let Some(a) = it.next() {
                match it.next() {
                    Some(b) => next.push(a.add(&b)),
                    None => next.push(a),
                }
            }
            layer = next;
        }
        layer.pop().unwrap()
    }

    /// Replaces `x_b` by `x_c` everywhere.
    pub fn substitute(&self, b: usize, c: usize) -> Result<RatFrac> {
        if b == c {
            return Ok(self.clone());
        }
        let mut num = self.num.substitute(b, c);
        let mut den = Vec::new();
        for (f, m) in &self.den {
            match *f {
                Factor::Diff(i, j) => {
                    let i2 = if i == b { c } else { i };
                    let j2 = if j == b { c } else { j };
                    if i2 == j2 {
                        return Err(GreeneError::PoleCreated(i, j));
                    }
                    let (g, flip) = oriented(i2, j2);
                    if flip && m % 2 == 1 {
                        num = -&num;
                    }
                    den.push((g, *m));
                }
                Factor::Var(i) => den.push((Factor::Var(if i == b { c } else { i }), *m)),
            }
        }
        Ok(RatFrac::new(num, den))
    }

    /// Applies an injective relabelling of the variables.
    pub fn rename(&self, map: &dyn Fn(usize) -> usize) -> RatFrac {
        let mut num = self.num.rename(map);
        let mut den = Vec::new();
        for (f, m) in &self.den {
            match *f {
                Factor::Diff(i, j) => {
                    let (g, flip) = oriented(map(i), map(j));
                    if flip && m % 2 == 1 {
                        num = -&num;
                    }
                    den.push((g, *m));
                }
                Factor::Var(i) => den.push((Factor::Var(map(i)), *m)),
            }
        }
        RatFrac::new(num, den)
    }

    /// Exact value at `point` (`point[k]` is `x_{k+1}`).
    pub fn eval(&self, point: &[BigRational]) -> Result<BigRational> {
        if self.max_var() > point.len() {
            return Err(GreeneError::UniverseMismatch);
        }
        let mut d = BigRational::one();
        for (f, m) in &self.den {
            let v = f.eval(point);
            if v.is_zero() {
                return Err(GreeneError::EvaluationPole);
            }
            d *= num_traits::pow(v, *m as usize);
        }
        Ok(self.num.eval(point) / d)
    }

    pub fn eval_ints(&self, point: &[i64]) -> Result<BigRational> {
        let p: Vec<BigRational> = point
            .iter()
            .map(|&v| BigRational::from_integer(v.into()))
            .collect();
        self.eval(&p)
    }

    fn den_eval_int(&self, point: &[BigInt]) -> BigInt {
        let mut d = BigInt::one();
        for (f, m) in &self.den {
            d *= num_traits::pow(f.eval_int(point), *m as usize);
        }
        d
    }
}

const PREFILTER_POINTS: usize = 3;
const PREFILTER_SEED: u64 = 0x6772_6565_6e65;

/// Fixed table of pseudo-random integer points; row `k` has 16 coordinates.
fn prefilter_table() -> &'static Vec<Vec<BigInt>> {
    static TABLE: OnceLock<Vec<Vec<BigInt>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut rng = ChaCha8Rng::seed_from_u64(PREFILTER_SEED);
        (0..PREFILTER_POINTS)
            .map(|_| {
                (0..16)
                    .map(|_| BigInt::from(rng.gen_range(-1000i64..=1000)))
                    .collect()
            })
            .collect()
    })
}

/// Exact equality of rational functions.
///
/// A cheap evaluation at a few seeded integer points may reject; it can
/// never accept. The answer always comes from comparing
/// `num(a) * L/den(a)` with `num(b) * L/den(b)` over the common multiple
/// `L` of both denominators.
pub fn frac_equal(a: &RatFrac, b: &RatFrac) -> bool {
    let nvars = a.max_var().max(b.max_var());
    if nvars <= 16 {
        for point in prefilter_table() {
            let da = a.den_eval_int(point);
            let db = b.den_eval_int(point);
            if da.is_zero() || db.is_zero() {
                continue;
            }
            if a.num.eval_int(point) * &db != b.num.eval_int(point) * &da {
                return false;
            }
        }
    }
    let l = RatFrac::lcm_den(&a.den, &b.den);
    a.num_over(&l) == b.num_over(&l)
}
