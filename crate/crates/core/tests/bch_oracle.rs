//! The truncated BCH product checked against two independent routes: matrix
//! `log(exp X exp Y)` for strictly upper-triangular matrices, and
//! `exp(ad X) exp(ad Y) = exp(ad (X · Y))` inside the full real form.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use realform::nilpotent::{bch, bch_multiply, extract_n, random_group_element, LieSpace};
use realform::rational::{to_big, BigRational};
use realform::real_algebra::RealForm;

type Mat = Vec<Vec<BigRational>>;

struct Matrices(usize);

impl Matrices {
    fn mul(&self, a: &Mat, b: &Mat) -> Mat {
        let n = self.0;
        let mut out = self.zero();
        for i in 0..n {
            for k in 0..n {
                if a[i][k].is_zero() {
                    continue;
                }
                for j in 0..n {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
        out
    }

    fn identity(&self) -> Mat {
        let mut m = self.zero();
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = BigRational::one();
        }
        m
    }

    /// `Σ_{k<n} A^k / k!` for nilpotent `A`.
    fn exp(&self, a: &Mat) -> Mat {
        let mut term = self.identity();
        let mut sum = self.identity();
        for k in 1..self.0 {
            term = self.scale(&self.mul(&term, a), &BigRational::new(BigInt::one(), BigInt::from(k)));
            sum = self.add(&sum, &term);
        }
        sum
    }

    /// `Σ_{k≥1} (−1)^{k+1} B^k / k` with `B = U − I` nilpotent.
    fn log(&self, u: &Mat) -> Mat {
        let b = self.add(u, &self.scale(&self.identity(), &-BigRational::one()));
        let mut power = self.identity();
        let mut sum = self.zero();
        for k in 1..self.0 {
            power = self.mul(&power, &b);
            let sign = if k % 2 == 1 { 1 } else { -1 };
            sum = self.add(&sum, &self.scale(&power, &BigRational::new(BigInt::from(sign), BigInt::from(k))));
        }
        sum
    }
}

impl LieSpace for Matrices {
    type Elem = Mat;

    fn zero(&self) -> Mat {
        vec![vec![BigRational::zero(); self.0]; self.0]
    }

    fn add(&self, a: &Mat, b: &Mat) -> Mat {
        a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect()).collect()
    }

    fn scale(&self, a: &Mat, c: &BigRational) -> Mat {
        a.iter().map(|r| r.iter().map(|x| x * c).collect()).collect()
    }

    fn bracket(&self, a: &Mat, b: &Mat) -> Mat {
        self.add(&self.mul(a, b), &self.scale(&self.mul(b, a), &-BigRational::one()))
    }
}

fn strictly_upper(n: usize, entries: &[(i64, i64)]) -> Mat {
    let mut m = Matrices(n).zero();
    let mut it = entries.iter();
    for i in 0..n {
        for j in i + 1..n {
            let &(p, q) = it.next().unwrap();
            m[i][j] = BigRational::new(BigInt::from(p), BigInt::from(q));
        }
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn matches_matrix_logarithm(
        n in 2usize..=6,
        xs in prop::collection::vec((-3i64..=3, 1i64..=3), 15),
        ys in prop::collection::vec((-3i64..=3, 1i64..=3), 15),
    ) {
        let space = Matrices(n);
        let (x, y) = (strictly_upper(n, &xs), strictly_upper(n, &ys));
        let expected = space.log(&space.mul(&space.exp(&x), &space.exp(&y)));
        prop_assert_eq!(bch(&space, &x, &y, n - 1), expected);
    }
}

/// Sparse `ad` of an element of `𝔫` acting on the whole `ℬ`.
struct Adjoint {
    dim: usize,
    entries: Vec<(usize, usize, BigRational)>,
}

impl Adjoint {
    fn new(form: &RealForm, b_index: &[usize], x: &[BigRational]) -> Self {
        let mut position = vec![None; form.dim()];
        for (p, &i) in b_index.iter().enumerate() {
            position[i] = Some(p);
        }
        let mut dense = vec![vec![BigRational::zero(); form.dim()]; form.dim()];
        for (i, j, k, c) in form.table.coefficients() {
            if let Some(p) = position[i] {
                dense[k][j] += &x[p] * to_big(&c);
            }
        }
        let mut entries = Vec::new();
        for (k, row) in dense.into_iter().enumerate() {
            for (j, v) in row.into_iter().enumerate() {
                if !v.is_zero() {
                    entries.push((k, j, v));
                }
            }
        }
        Adjoint { dim: form.dim(), entries }
    }

    fn apply(&self, v: &[BigRational]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.dim];
        for (k, j, c) in &self.entries {
            if !v[*j].is_zero() {
                out[*k] += c * &v[*j];
            }
        }
        out
    }

    /// `exp(ad x) v`; the series stops once a term vanishes.
    fn exp_apply(&self, v: &[BigRational]) -> Vec<BigRational> {
        let mut sum = v.to_vec();
        let mut term = v.to_vec();
        for k in 1.. {
            let inv = BigRational::new(BigInt::one(), BigInt::from(k));
            term = self.apply(&term).into_iter().map(|t| t * &inv).collect();
            if term.iter().all(Zero::is_zero) {
                break;
            }
            for (s, t) in sum.iter_mut().zip(&term) {
                *s += t;
            }
        }
        sum
    }
}

fn check_adjoint(name: &str, n: Option<usize>, samples: usize) {
    let form = RealForm::from_catalog(name, n).unwrap();
    let alg = extract_n(&form).unwrap();
    let b_index = alg.b_index.clone().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..samples {
        let x = random_group_element(alg.dim(), &mut rng);
        let y = random_group_element(alg.dim(), &mut rng);
        let z = bch_multiply(&alg, &x, &y).unwrap();
        let [ax, ay, az] = [&x, &y, &z].map(|g| Adjoint::new(&form, &b_index, &g.log_coordinates));
        for j in 0..form.dim() {
            let mut e = vec![BigRational::zero(); form.dim()];
            e[j] = BigRational::one();
            assert_eq!(ax.exp_apply(&ay.exp_apply(&e)), az.exp_apply(&e), "{name}: column {j}");
        }
    }
}

#[test]
fn adjoint_route_on_rank_one_forms() {
    check_adjoint("AIV", Some(3), 4);
    check_adjoint("CII", Some(2), 4);
    check_adjoint("FII", None, 3);
}

#[test]
fn adjoint_route_on_split_forms() {
    check_adjoint("split-G2", None, 4);
    check_adjoint("split-B3", None, 3);
    check_adjoint("complex-A2", None, 3);
}

#[test]
fn adjoint_route_on_split_f4() {
    check_adjoint("split-F4", None, 6);
}
