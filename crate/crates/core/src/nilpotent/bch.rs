//! Exact Baker–Campbell–Hausdorff products, truncated at the nilpotency class.
//!
//! The homogeneous components `Z_n` of `log(exp X exp Y)` follow the recursion
//! `(n+1) Z_{n+1} = ½[X − Y, Z_n] + Σ_{p ≥ 1, 2p ≤ n} B_{2p}/(2p)! Σ_{k_1+…+k_{2p} = n} [Z_{k_1}, […[Z_{k_{2p}}, X + Y]…]]`
//! with `Z_1 = X + Y`; each `Z_n` is a Lie polynomial of degree `n`, so all
//! components above the class vanish.

use num_bigint::BigInt;
use num_rational::Ratio;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::NilpotentAlgebra;
use crate::error::{Error, Result};
use crate::rational::{serde_big_vec, to_big, BigRational};

/// Operations the recursion needs.
pub trait LieSpace {
    type Elem: Clone;
    fn zero(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, a: &Self::Elem, c: &BigRational) -> Self::Elem;
    fn bracket(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
}

/// `B_0, …, B_n` with `B_1 = −½`.
pub fn bernoulli(n: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(n + 1);
    let mut binom_row: Vec<BigInt> = vec![BigInt::one()];
    for m in 0..=n {
        // Row m + 1 of Pascal's triangle.
        let mut next = vec![BigInt::one(); m + 2];
        for k in 1..=m {
            next[k] = &binom_row[k - 1] + &binom_row[k];
        }
        binom_row = next;
        if m == 0 {
            b.push(BigRational::one());
            continue;
        }
        let mut sum = BigRational::zero();
        for (k, bk) in b.iter().enumerate() {
            sum += bk * BigRational::from_integer(binom_row[k].clone());
        }
        b.push(-sum / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `log(exp x exp y)` through degree `degree`.
pub fn bch<S: LieSpace>(space: &S, x: &S::Elem, y: &S::Elem, degree: usize) -> S::Elem {
    if degree == 0 {
        return space.zero();
    }
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let minus_one = -BigRational::one();
    let sum_xy = space.add(x, y);
    let diff_xy = space.add(x, &space.scale(y, &minus_one));
    let b = bernoulli(degree);
    // z[n] is the degree-n component; z[0] is unused.
    let mut z: Vec<S::Elem> = vec![space.zero(), sum_xy.clone()];
    for n in 1..degree {
        let mut next = space.scale(&space.bracket(&diff_xy, &z[n]), &half);
        if n >= 2 {
            // t[j][m] = Σ_{k_1+…+k_j = m} [Z_{k_1}, […[Z_{k_j}, X + Y]…]].
            let max_j = n - n % 2;
            let mut t: Vec<Vec<Option<S::Elem>>> = vec![vec![None; n + 1]; max_j + 1];
            t[0][0] = Some(sum_xy.clone());
            for j in 1..=max_j {
                for m in j..=n {
                    let mut acc: Option<S::Elem> = None;
                    for k in 1..=m - (j - 1) {
                        if let Some(inner) = &t[j - 1][m - k] {
                            let term = space.bracket(&z[k], inner);
                            acc = Some(match acc {
                                Some(a) => space.add(&a, &term),
                                None => term,
                            });
                        }
                    }
                    t[j][m] = acc;
                }
            }
            for p in 1..=n / 2 {
                if let Some(inner) = &t[2 * p][n] {
                    let k = &b[2 * p] / BigRational::from_integer(factorial(2 * p));
                    next = space.add(&next, &space.scale(inner, &k));
                }
            }
        }
        let inv = BigRational::new(BigInt::one(), BigInt::from(n + 1));
        z.push(space.scale(&next, &inv));
    }
    z[1..].iter().fold(space.zero(), |acc, e| space.add(&acc, e))
}

/// A point of `N` in exponential coordinates of the first kind over `𝒩`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupElement {
    #[serde(with = "serde_big_vec")]
    pub log_coordinates: Vec<BigRational>,
}

impl GroupElement {
    pub fn identity(dim: usize) -> Self {
        GroupElement { log_coordinates: vec![BigRational::zero(); dim] }
    }

    pub fn inverse(&self) -> Self {
        GroupElement { log_coordinates: self.log_coordinates.iter().map(|c| -c).collect() }
    }
}

/// `num / den` with a shared positive denominator, kept in lowest terms.
#[derive(Clone, Debug)]
struct Scaled {
    num: Vec<BigInt>,
    den: BigInt,
}

impl Scaled {
    fn from_rationals(v: &[BigRational]) -> Self {
        let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let num = v.iter().map(|x| x.numer() * (&den / x.denom())).collect();
        Scaled { num, den }.reduced()
    }

    fn to_rationals(&self) -> Vec<BigRational> {
        self.num.iter().map(|x| BigRational::new(x.clone(), self.den.clone())).collect()
    }

    fn reduced(mut self) -> Self {
        let g = self.num.iter().fold(self.den.clone(), |acc, x| acc.gcd(x));
        if g.is_zero() || g.is_one() {
            if self.num.iter().all(Zero::is_zero) {
                self.den = BigInt::one();
            }
            return self;
        }
        for x in &mut self.num {
            *x /= &g;
        }
        self.den /= &g;
        self
    }
}

/// Dense coordinates with the algebra's structure constants, indexed by the left factor.
struct Coordinates {
    dim: usize,
    /// `by_left[i]` lists `(j, k, C)` with `[e_i, e_j] = (C / den) e_k`.
    by_left: Vec<Vec<(usize, usize, BigInt)>>,
    den: BigInt,
}

impl Coordinates {
    fn new(table: &crate::real_algebra::StructureTable) -> Self {
        let constants: Vec<(usize, usize, usize, BigRational)> =
            table.coefficients().map(|(i, j, k, c)| (i, j, k, to_big(&c))).collect();
        let den = constants.iter().fold(BigInt::one(), |acc, (_, _, _, c)| acc.lcm(c.denom()));
        let mut by_left = vec![Vec::new(); table.dim()];
        for (i, j, k, c) in constants {
            by_left[i].push((j, k, c.numer() * (&den / c.denom())));
        }
        Coordinates { dim: table.dim(), by_left, den }
    }
}

impl LieSpace for Coordinates {
    type Elem = Scaled;

    fn zero(&self) -> Self::Elem {
        Scaled { num: vec![BigInt::zero(); self.dim], den: BigInt::one() }
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let den = a.den.lcm(&b.den);
        let (fa, fb) = (&den / &a.den, &den / &b.den);
        let num = a.num.iter().zip(&b.num).map(|(x, y)| x * &fa + y * &fb).collect();
        Scaled { num, den }.reduced()
    }

    fn scale(&self, a: &Self::Elem, c: &BigRational) -> Self::Elem {
        let num = a.num.iter().map(|x| x * c.numer()).collect();
        Scaled { num, den: &a.den * c.denom() }.reduced()
    }

    fn bracket(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut num = vec![BigInt::zero(); self.dim];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, k, c) in &self.by_left[i] {
                let y = &b.num[*j];
                if !y.is_zero() {
                    num[*k] += x * y * c;
                }
            }
        }
        Scaled { num, den: &a.den * &b.den * &self.den }.reduced()
    }
}

impl NilpotentAlgebra {
    /// `[x, y]` on dense coordinates.
    pub fn bracket_big(&self, x: &[BigRational], y: &[BigRational]) -> Vec<BigRational> {
        let space = Coordinates::new(&self.table);
        space.bracket(&Scaled::from_rationals(x), &Scaled::from_rationals(y)).to_rationals()
    }
}

/// `X · Y = log(exp X exp Y)`, exact and truncated at the class.
pub fn bch_multiply(algebra: &NilpotentAlgebra, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
    let n = algebra.dim();
    for g in [x, y] {
        if g.log_coordinates.len() != n {
            return Err(Error::Dimension { expected: n, got: g.log_coordinates.len() });
        }
    }
    let space = Coordinates::new(&algebra.table);
    let (x, y) = (Scaled::from_rationals(&x.log_coordinates), Scaled::from_rationals(&y.log_coordinates));
    Ok(GroupElement { log_coordinates: bch(&space, &x, &y, algebra.class).to_rationals() })
}

/// Coordinates `p/q` with `|p| ≤ 3`, `1 ≤ q ≤ 3`.
pub fn random_group_element(dim: usize, rng: &mut impl Rng) -> GroupElement {
    let log_coordinates = (0..dim)
        .map(|_| Ratio::new(BigInt::from(rng.gen_range(-3i64..=3)), BigInt::from(rng.gen_range(1i64..=3))))
        .collect();
    GroupElement { log_coordinates }
}
