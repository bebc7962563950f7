//! Satake diagrams, the induced involutions on roots, and restricted roots.
//!
//! `θ` is built as the isometry that fixes `span(Δ₀ ∪ {α − ω(α)})` and
//! negates its orthogonal complement `𝔞*` inside the span of the roots. The
//! diagram is rejected unless `θ` permutes the roots and its values on `Δ₁`
//! have the shape `−ω(α) − Σ n_{βα} β` with nonnegative integers `n`.

mod catalog;
mod format;

pub use catalog::{catalog, catalog_names, standard_forms, CatalogEntry, FormSpec};
pub use format::{parse_diagram, render_diagram};

use serde::Serialize;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::rational::{int, Rational};
use crate::root_system::{RootSystemModel, RootVector, TypeLabel};

#[derive(Clone, Debug)]
pub struct SatakeDiagram {
    pub name: String,
    pub model: Arc<RootSystemModel>,
    /// Imaginary simple roots `Δ₀`, sorted.
    pub shaded: Vec<usize>,
    /// `ω` on all simple indices; the identity on `Δ₀`.
    pub omega: Vec<usize>,
}

impl SatakeDiagram {
    /// Builds a diagram from shaded indices and arrow pairs, checking only the
    /// structural constraints.
    pub fn new(name: &str, label: &TypeLabel, shaded: &[usize], arrows: &[(usize, usize)]) -> Result<Self> {
        let model = Arc::new(RootSystemModel::build(label)?);
        let l = model.rank();
        let mut shaded = shaded.to_vec();
        shaded.sort_unstable();
        shaded.dedup();
        if let Some(&bad) = shaded.iter().find(|&&i| i >= l) {
            return Err(Error::InconsistentSatake(format!("shaded index {bad} out of range 0..{l}")));
        }
        let mut omega: Vec<usize> = (0..l).collect();
        for &(a, b) in arrows {
            if a >= l || b >= l || a == b {
                return Err(Error::InconsistentSatake(format!("bad arrow {a}-{b}")));
            }
            if shaded.contains(&a) || shaded.contains(&b) {
                return Err(Error::InconsistentSatake(format!("arrow {a}-{b} touches a shaded node")));
            }
            if omega[a] != a || omega[b] != b {
                return Err(Error::InconsistentSatake(format!("arrow {a}-{b} reuses a node; ω must be an involution")));
            }
            omega[a] = b;
            omega[b] = a;
        }
        Ok(SatakeDiagram { name: name.to_string(), model, shaded, omega })
    }

    pub fn delta0(&self) -> &[usize] {
        &self.shaded
    }

    pub fn delta1(&self) -> Vec<usize> {
        (0..self.model.rank()).filter(|i| !self.shaded.contains(i)).collect()
    }

    pub fn arrows(&self) -> Vec<(usize, usize)> {
        (0..self.omega.len()).filter(|&i| self.omega[i] > i).map(|i| (i, self.omega[i])).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RootClass {
    Real,
    Imaginary,
    Complex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FormClass {
    Split,
    Compact,
    Complex,
    QuasiSplit,
    General,
}

/// Satake data together with `θ`, `σ = −θ` on roots and the derived choices.
#[derive(Clone, Debug)]
pub struct RealFormContext {
    pub diagram: SatakeDiagram,
    pub model: Arc<RootSystemModel>,
    /// `θ` on the ambient space.
    pub theta: Matrix<Rational>,
    /// `θ` on simple-root coordinates; column `j` is `θ(α_j)`.
    pub theta_lattice: Vec<Vec<i64>>,
    theta_root: Vec<usize>,
    sigma_root: Vec<usize>,
    classes: Vec<RootClass>,
    /// `n[β][α]` for `β ∈ Δ₀`, `α ∈ Δ₁`; zero elsewhere.
    pub n: Vec<Vec<i64>>,
    /// Orthogonal basis of `𝔞*`.
    pub a_star_basis: Vec<RootVector>,
    /// Lowest-index member of each two-element `ω`-orbit.
    pub delta1_star: Vec<usize>,
    complex_star: Vec<bool>,
}

fn project(v: &RootVector, basis: &[RootVector]) -> RootVector {
    let mut out = RootVector::zero(v.0.len());
    for a in basis {
        out = out.add(&a.scale(v.dot(a) / a.dot(a)));
    }
    out
}

/// Builds the context of a diagram, validating it.
pub fn compute_theta(diagram: &SatakeDiagram) -> Result<RealFormContext> {
    let model = diagram.model.clone();
    let l = model.rank();
    let dim = model.ambient_dim();
    let bad = |msg: String| Error::InconsistentSatake(msg);
    let simple = model.simple_roots();
    let delta1 = diagram.delta1();
    for &a in &delta1 {
        let w = diagram.omega[a];
        if diagram.shaded.contains(&w) || diagram.omega[w] != a {
            return Err(bad("ω is not an involution of Δ₁".into()));
        }
    }
    for &a in &delta1 {
        for &b in &delta1 {
            let c = model.cartan_matrix();
            if c[diagram.omega[a]][diagram.omega[b]] != c[a][b] {
                return Err(bad("ω does not preserve Cartan integers on Δ₁".into()));
            }
        }
    }

    let mut fixed: Vec<RootVector> = diagram.shaded.iter().map(|&b| simple[b].clone()).collect();
    for &(a, b) in &diagram.arrows() {
        fixed.push(simple[a].sub(&simple[b]));
    }
    let constraints: Matrix<Rational> =
        fixed.iter().map(|f| simple.iter().map(|s| s.dot(f)).collect()).collect();
    let raw: Vec<RootVector> = if constraints.is_empty() {
        (0..l).map(|i| simple[i].clone()).collect()
    } else {
        linalg::nullspace(&constraints, l)
            .iter()
            .map(|x| {
                let mut v = RootVector::zero(dim);
                for (i, c) in x.iter().enumerate() {
                    v = v.add(&simple[i].scale(*c));
                }
                v
            })
            .collect()
    };
    let mut a_star: Vec<RootVector> = Vec::new();
    for v in raw {
        let w = v.sub(&project(&v, &a_star));
        if !w.is_zero() {
            a_star.push(w);
        }
    }

    let apply = |v: &RootVector| -> RootVector { v.sub(&project(v, &a_star).scale(int(2))) };
    let theta: Matrix<Rational> = {
        let cols: Vec<RootVector> = (0..dim)
            .map(|j| {
                let mut e = RootVector::zero(dim);
                e.0[j] = int(1);
                apply(&e)
            })
            .collect();
        (0..dim).map(|i| cols.iter().map(|c| c.0[i]).collect()).collect()
    };
    let mut theta_cols = Vec::with_capacity(l);
    for s in simple {
        let img = apply(s);
        let k = model
            .lattice_coords(&img)
            .ok_or_else(|| bad("θ does not preserve the root lattice".into()))?;
        theta_cols.push(k);
    }
    let theta_lattice: Vec<Vec<i64>> = (0..l).map(|i| (0..l).map(|j| theta_cols[j][i]).collect()).collect();
    let act = |k: &[i64]| -> Vec<i64> { (0..l).map(|i| (0..l).map(|j| theta_lattice[i][j] * k[j]).sum()).collect() };

    for i in 0..l {
        for j in 0..l {
            if model.inner_lattice(&theta_cols[i], &theta_cols[j]) != model.gram()[i][j] {
                return Err(bad("θ is not an isometry".into()));
            }
        }
        if act(&theta_cols[i]) != (0..l).map(|j| i64::from(i == j)).collect::<Vec<_>>() {
            return Err(bad("θ is not an involution".into()));
        }
    }
    let mut theta_root = Vec::with_capacity(model.len());
    for r in model.roots() {
        let id = model
            .lookup_lattice(&act(&r.lattice))
            .ok_or_else(|| bad(format!("θ maps the root {} outside Φ", r.vector)))?;
        theta_root.push(id);
    }
    let sigma_root: Vec<usize> = theta_root.iter().map(|&t| model.neg(t)).collect();

    let mut n = vec![vec![0i64; l]; l];
    for &a in &delta1 {
        let img = &theta_cols[a];
        let w = diagram.omega[a];
        for j in 0..l {
            let c = img[j];
            if j == w {
                if c != -1 {
                    return Err(bad(format!("θ(α_{a}) has coefficient {c} on ω(α_{a})")));
                }
            } else if diagram.shaded.contains(&j) {
                if c > 0 {
                    return Err(bad(format!("negative n_{{β α}} for β = α_{j}, α = α_{a}")));
                }
                n[j][a] = -c;
            } else if c != 0 {
                return Err(bad(format!("θ(α_{a}) involves the unshaded root α_{j}")));
            }
        }
    }
    for &a in &delta1 {
        for &b in &diagram.shaded {
            if n[b][diagram.omega[a]] != n[b][a] {
                return Err(bad("n_{β ω(α)} ≠ n_{β α}".into()));
            }
        }
    }

    let classes: Vec<RootClass> = (0..model.len())
        .map(|id| {
            if theta_root[id] == id {
                RootClass::Imaginary
            } else if sigma_root[id] == id {
                RootClass::Real
            } else {
                RootClass::Complex
            }
        })
        .collect();
    for i in 0..l {
        let imag = classes[model.simple_id(i)] == RootClass::Imaginary;
        if imag != diagram.shaded.contains(&i) {
            return Err(bad(format!("simple root {i} is shaded but not imaginary, or conversely")));
        }
    }
    for id in 0..model.len() {
        let diff: Vec<i64> = model
            .root(id)
            .lattice
            .iter()
            .zip(&model.root(sigma_root[id]).lattice)
            .map(|(a, b)| a - b)
            .collect();
        if model.lookup_lattice(&diff).is_some() {
            return Err(bad(format!("α − α^σ is a root for α = {}", model.root(id).vector)));
        }
    }

    let delta1_star: Vec<usize> = diagram.arrows().iter().map(|&(a, _)| a).collect();
    let mut complex_star = vec![false; model.len()];
    for id in 0..model.num_positive() {
        if classes[id] != RootClass::Complex {
            continue;
        }
        let partner = sigma_root[id];
        if !model.is_positive(partner) {
            return Err(bad("σ maps a positive complex root to a negative root".into()));
        }
        // Keep the root whose simple-root coordinates are lexicographically larger.
        let keep = model.root(id).lattice > model.root(partner).lattice;
        if keep {
            complex_star[id] = true;
            complex_star[model.neg(id)] = true;
        }
    }

    Ok(RealFormContext {
        diagram: diagram.clone(),
        model,
        theta,
        theta_lattice,
        theta_root,
        sigma_root,
        classes,
        n,
        a_star_basis: a_star,
        delta1_star,
        complex_star,
    })
}

impl RealFormContext {
    pub fn theta(&self, id: usize) -> usize {
        self.theta_root[id]
    }

    pub fn sigma(&self, id: usize) -> usize {
        self.sigma_root[id]
    }

    pub fn class(&self, id: usize) -> RootClass {
        self.classes[id]
    }

    pub fn omega(&self, i: usize) -> usize {
        self.diagram.omega[i]
    }

    pub fn is_shaded(&self, i: usize) -> bool {
        self.diagram.shaded.binary_search(&i).is_ok()
    }

    /// Membership in `Φ_ℂ* = Φ_ℂ^{+*} ∪ −Φ_ℂ^{+*}`.
    pub fn in_complex_star(&self, id: usize) -> bool {
        self.complex_star[id]
    }

    pub fn real_rank(&self) -> usize {
        self.a_star_basis.len()
    }

    /// Orthogonal projection onto `𝔞*`.
    pub fn projection(&self, id: usize) -> RootVector {
        project(&self.model.root(id).vector, &self.a_star_basis)
    }

    /// Height of the restricted root of `id` in the restricted simple roots.
    pub fn restricted_height(&self, id: usize) -> i64 {
        self.model
            .root(id)
            .lattice
            .iter()
            .enumerate()
            .filter(|(i, _)| !self.is_shaded(*i))
            .map(|(_, &k)| k)
            .sum()
    }

    /// Roots with nonzero restriction (`Σ`).
    pub fn sigma_set(&self) -> Vec<usize> {
        (0..self.model.len()).filter(|&id| self.class(id) != RootClass::Imaginary).collect()
    }

    pub fn positive_sigma(&self) -> Vec<usize> {
        (0..self.model.num_positive()).filter(|&id| self.class(id) != RootClass::Imaginary).collect()
    }

    /// Positive roots of each class, in id order.
    pub fn classify_roots(&self) -> RootPartition {
        let mut p = RootPartition::default();
        for id in 0..self.model.len() {
            match self.class(id) {
                RootClass::Real => p.real.push(id),
                RootClass::Imaginary => p.imaginary.push(id),
                RootClass::Complex => p.complex.push(id),
            }
        }
        p
    }

    pub fn classify_form(&self) -> FormClass {
        let all = |c: RootClass| self.classes.iter().all(|&x| x == c);
        if all(RootClass::Real) {
            FormClass::Split
        } else if all(RootClass::Imaginary) {
            FormClass::Compact
        } else if all(RootClass::Complex) {
            FormClass::Complex
        } else if self.diagram.shaded.is_empty() {
            FormClass::QuasiSplit
        } else {
            FormClass::General
        }
    }

    pub fn restricted_system(&self) -> RestrictedRootSystem {
        restricted_system(self)
    }
}

/// Disjoint root classes covering `Φ`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RootPartition {
    pub real: Vec<usize>,
    pub imaginary: Vec<usize>,
    pub complex: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RestrictedRootSystem {
    pub a_dim: usize,
    pub restricted_roots: Vec<RootVector>,
    pub multiplicities: Vec<usize>,
    pub type_label: String,
}

impl RestrictedRootSystem {
    pub fn multiplicity(&self, v: &RootVector) -> usize {
        self.restricted_roots.iter().position(|r| r == v).map_or(0, |i| self.multiplicities[i])
    }
}

fn identify_reduced(rank: usize, roots: &[RootVector]) -> String {
    let mut norms: Vec<Rational> = roots.iter().map(|r| r.dot(r)).collect();
    norms.sort();
    norms.dedup();
    let count = roots.len();
    let two_lengths = norms.len() == 2;
    let long = norms.last().copied();
    let long_count = roots.iter().filter(|r| Some(r.dot(r)) == long).count();
    let name = match (rank, count, two_lengths) {
        (r, c, false) if c == r * (r + 1) => format!("A{r}"),
        (2, 12, true) => "G2".into(),
        (4, 48, true) => "F4".into(),
        (r, c, true) if c == 2 * r * r => {
            if r == 2 || long_count > 2 * r {
                format!("B{r}")
            } else {
                format!("C{r}")
            }
        }
        (r, c, false) if r >= 4 && c == 2 * r * (r - 1) => format!("D{r}"),
        (6, 72, false) => "E6".into(),
        (7, 126, false) => "E7".into(),
        (8, 240, false) => "E8".into(),
        _ => format!("?{rank}"),
    };
    name
}

/// Restricted roots as orthogonal projections onto `𝔞*`, with multiplicities.
pub fn restricted_system(ctx: &RealFormContext) -> RestrictedRootSystem {
    let mut restricted: Vec<RootVector> = Vec::new();
    let mut mult: Vec<usize> = Vec::new();
    for id in ctx.sigma_set() {
        let p = ctx.projection(id);
        match restricted.iter().position(|r| *r == p) {
            Some(i) => mult[i] += 1,
            None => {
                restricted.push(p);
                mult.push(1);
            }
        }
    }
    let mut order: Vec<usize> = (0..restricted.len()).collect();
    order.sort_by(|&a, &b| restricted[a].cmp(&restricted[b]));
    let restricted_roots: Vec<RootVector> = order.iter().map(|&i| restricted[i].clone()).collect();
    let multiplicities: Vec<usize> = order.iter().map(|&i| mult[i]).collect();

    let mut simple: Vec<RootVector> = Vec::new();
    for i in ctx.diagram.delta1() {
        let p = ctx.projection(ctx.model.simple_id(i));
        if !simple.contains(&p) {
            simple.push(p);
        }
    }
    let mut comp: Vec<usize> = (0..simple.len()).collect();
    for i in 0..simple.len() {
        for j in 0..simple.len() {
            if simple[i].dot(&simple[j]) != int(0) {
                let (a, b) = (comp[i], comp[j]);
                for c in comp.iter_mut() {
                    if *c == b {
                        *c = a;
                    }
                }
            }
        }
    }
    let mut labels = Vec::new();
    let mut reps: Vec<usize> = comp.clone();
    reps.sort_unstable();
    reps.dedup();
    for rep in reps {
        let members: Vec<&RootVector> = (0..simple.len()).filter(|&i| comp[i] == rep).map(|i| &simple[i]).collect();
        let others: Vec<&RootVector> = (0..simple.len()).filter(|&i| comp[i] != rep).map(|i| &simple[i]).collect();
        let roots: Vec<RootVector> = restricted_roots
            .iter()
            .filter(|r| others.iter().all(|o| r.dot(o) == int(0)) && members.iter().any(|m| r.dot(m) != int(0)))
            .cloned()
            .collect();
        let k = members.len();
        let nonreduced = roots.iter().any(|r| roots.contains(&r.scale(int(2))));
        if nonreduced {
            labels.push(format!("BC{k}"));
        } else {
            labels.push(identify_reduced(k, &roots));
        }
    }
    RestrictedRootSystem {
        a_dim: ctx.real_rank(),
        restricted_roots,
        multiplicities,
        type_label: if labels.is_empty() { "0".into() } else { labels.join("+") },
    }
}
