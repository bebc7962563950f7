//! Named bases of rank-one `𝔫` algebras and the published tables they are
//! compared against.
//!
//! Presets are optional normalizations; the raw `𝒩` table stays primary.

use std::collections::BTreeMap;

use serde::Serialize;

use super::NilpotentAlgebra;
use crate::error::{Error, Result};
use crate::rational::{int, rat, Rational};
use crate::real_algebra::{AlgebraElement, BasisSymbol, RealForm, StructureTable, SymbolKind};
use crate::root_system::{Family, RootVector};
use crate::satake::RootClass;

/// Expected brackets `[e_i, e_j] = c e_k` over a labelled basis; all others vanish.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReferenceTable {
    pub name: String,
    pub labels: Vec<String>,
    pub entries: Vec<(usize, usize, usize, i64)>,
}

impl ReferenceTable {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    fn dense(&self) -> BTreeMap<(usize, usize), AlgebraElement> {
        let mut out: BTreeMap<(usize, usize), AlgebraElement> = BTreeMap::new();
        for &(i, j, k, c) in &self.entries {
            let (a, b, c) = if i < j { (i, j, c) } else { (j, i, -c) };
            out.entry((a, b)).or_default().add_term(k, int(c));
        }
        out
    }
}

fn index_of(labels: &[String], label: &str) -> usize {
    labels.iter().position(|l| l == label).unwrap_or_else(|| panic!("unknown label {label}"))
}

/// `heisenberg` (su(n,1), `n ≥ 2`), `quaternionic` (sp(n,1), `n ≥ 1`) or `octonionic` (f4(−20)).
pub fn reference_table(name: &str, n: Option<usize>) -> Result<ReferenceTable> {
    let need_n = |min: usize| match n {
        Some(n) if n >= min => Ok(n),
        _ => Err(Error::Domain(format!("reference table {name} needs n ≥ {min}"))),
    };
    let mut labels: Vec<String> = Vec::new();
    let mut rels: Vec<(String, String, String, i64)> = Vec::new();
    let rel = |a: &str, b: &str, c: &str, k: i64| (a.to_string(), b.to_string(), c.to_string(), k);
    match name {
        "heisenberg" => {
            let n = need_n(2)?;
            for i in 1..n {
                labels.push(format!("X_alpha{i}"));
                labels.push(format!("Y_alpha{i}"));
                rels.push(rel(&format!("X_alpha{i}"), &format!("Y_alpha{i}"), "Z_beta", 1));
            }
            labels.push("Z_beta".into());
        }
        "quaternionic" => {
            let n = need_n(1)?;
            for i in 1..n {
                let (xa, ya, xb, yb) =
                    (format!("X_alpha{i}"), format!("Y_alpha{i}"), format!("X_beta{i}"), format!("Y_beta{i}"));
                labels.extend([xa.clone(), ya.clone(), xb.clone(), yb.clone()]);
                rels.push(rel(&xa, &xb, "X_gamma", 1));
                rels.push(rel(&xa, &yb, "Y_gamma", 1));
                rels.push(rel(&xa, &ya, "Z_delta", 1));
                rels.push(rel(&ya, &yb, "X_gamma", -1));
                rels.push(rel(&ya, &xb, "Y_gamma", 1));
                rels.push(rel(&xb, &yb, "Z_delta", 1));
            }
            labels.extend(["X_gamma".into(), "Y_gamma".into(), "Z_delta".into()]);
        }
        "octonionic" => {
            for i in 1..=4 {
                labels.push(format!("X_alpha{i}"));
                labels.push(format!("Y_alpha{i}"));
                rels.push(rel(&format!("X_alpha{i}"), &format!("Y_alpha{i}"), "Z_delta", 1));
            }
            for i in 1..=3 {
                labels.push(format!("X_gamma{i}"));
                labels.push(format!("Y_gamma{i}"));
            }
            labels.push("Z_delta".into());
            let table: [(&str, &str, &str, i64); 24] = [
                ("X_alpha1", "X_alpha2", "X_gamma3", -1),
                ("X_alpha1", "X_alpha3", "X_gamma2", 1),
                ("X_alpha1", "X_alpha4", "X_gamma1", -1),
                ("X_alpha1", "Y_alpha2", "Y_gamma3", 1),
                ("X_alpha1", "Y_alpha3", "Y_gamma2", -1),
                ("X_alpha1", "Y_alpha4", "Y_gamma1", 1),
                ("Y_alpha1", "X_alpha2", "Y_gamma3", 1),
                ("Y_alpha1", "X_alpha3", "Y_gamma2", -1),
                ("Y_alpha1", "X_alpha4", "Y_gamma1", 1),
                ("Y_alpha1", "Y_alpha2", "X_gamma3", 1),
                ("Y_alpha1", "Y_alpha3", "X_gamma2", -1),
                ("Y_alpha1", "Y_alpha4", "X_gamma1", 1),
                ("X_alpha2", "X_alpha3", "X_gamma1", 1),
                ("X_alpha2", "X_alpha4", "X_gamma2", 1),
                ("X_alpha2", "Y_alpha3", "Y_gamma1", 1),
                ("X_alpha2", "Y_alpha4", "Y_gamma2", 1),
                ("Y_alpha2", "X_alpha3", "Y_gamma1", 1),
                ("Y_alpha2", "X_alpha4", "Y_gamma2", 1),
                ("Y_alpha2", "Y_alpha3", "X_gamma1", -1),
                ("Y_alpha2", "Y_alpha4", "X_gamma2", -1),
                ("X_alpha3", "X_alpha4", "X_gamma3", 1),
                ("X_alpha3", "Y_alpha4", "Y_gamma3", 1),
                ("Y_alpha3", "X_alpha4", "Y_gamma3", 1),
                ("Y_alpha3", "Y_alpha4", "X_gamma3", -1),
            ];
            rels.extend(table.iter().map(|&(a, b, c, k)| rel(a, b, c, k)));
        }
        other => {
            return Err(Error::Domain(format!(
                "unknown reference table {other}; expected heisenberg, quaternionic or octonionic"
            )))
        }
    }
    let entries = rels
        .iter()
        .map(|(a, b, c, k)| (index_of(&labels, a), index_of(&labels, b), index_of(&labels, c), *k))
        .collect();
    Ok(ReferenceTable { name: name.to_string(), labels, entries })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum TableMatch {
    Exact,
    /// Matches after `e_i ↦ signs[i] e_i`.
    UpToSigns { signs: Vec<i8> },
    Mismatch { reason: String },
}

impl TableMatch {
    pub fn is_match(&self) -> bool {
        !matches!(self, TableMatch::Mismatch { .. })
    }
}

/// Exact comparison first; otherwise solves for a diagonal `±1` change of
/// basis over GF(2) and confirms it.
pub fn compare_tables(actual: &StructureTable, reference: &ReferenceTable) -> TableMatch {
    let n = actual.dim();
    if n != reference.dim() {
        return TableMatch::Mismatch { reason: format!("dimension {n} vs {}", reference.dim()) };
    }
    let expected = reference.dense();
    let zero = AlgebraElement::zero();
    let want = |i: usize, j: usize| expected.get(&(i, j)).unwrap_or(&zero);
    let pairs = || (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)));
    if pairs().all(|(i, j)| actual.bracket(i, j) == want(i, j)) {
        return TableMatch::Exact;
    }
    // Unknown x_i ∈ GF(2) with e_i ↦ (−1)^{x_i} e_i; one equation per term.
    let mut rows: Vec<Vec<bool>> = Vec::new();
    for (i, j) in pairs() {
        let (got, exp) = (actual.bracket(i, j), want(i, j));
        let support: Vec<usize> = got.iter().map(|(k, _)| k).collect();
        if support != exp.iter().map(|(k, _)| k).collect::<Vec<_>>() {
            return TableMatch::Mismatch {
                reason: format!("[{}, {}] has a different support", reference.labels[i], reference.labels[j]),
            };
        }
        for k in support {
            let (g, e) = (got.get(k), exp.get(k));
            if g != e && g != -e {
                return TableMatch::Mismatch {
                    reason: format!("[{}, {}] differs beyond sign", reference.labels[i], reference.labels[j]),
                };
            }
            let mut row = vec![false; n + 1];
            for v in [i, j, k] {
                row[v] ^= true;
            }
            row[n] = g != e;
            rows.push(row);
        }
    }
    let Some(x) = solve_gf2(rows, n) else {
        return TableMatch::Mismatch { reason: "no diagonal sign change reconciles the tables".into() };
    };
    let signs: Vec<i8> = x.iter().map(|&b| if b { -1 } else { 1 }).collect();
    let confirmed = pairs().all(|(i, j)| {
        let mut flipped = AlgebraElement::zero();
        for (k, c) in actual.bracket(i, j).iter() {
            flipped.add_term(k, c * int((signs[i] * signs[j] * signs[k]) as i64));
        }
        &flipped == want(i, j)
    });
    if confirmed {
        TableMatch::UpToSigns { signs }
    } else {
        TableMatch::Mismatch { reason: "sign solution failed to confirm".into() }
    }
}

/// Solves the augmented system `rows` (last column is the right side); free variables are zero.
fn solve_gf2(mut rows: Vec<Vec<bool>>, n: usize) -> Option<Vec<bool>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c]) else { continue };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && rows[i][c] {
                let pivot_row = rows[r].clone();
                for (a, b) in rows[i].iter_mut().zip(&pivot_row) {
                    *a ^= *b;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|row| row[n]) {
        return None;
    }
    let mut x = vec![false; n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = rows[i][n];
    }
    Some(x)
}

/// A named basis of `𝔫` with its reference table.
#[derive(Clone, Debug)]
pub struct Preset {
    pub algebra: NilpotentAlgebra,
    pub reference: ReferenceTable,
    /// Each named vector in the coordinates of the raw `𝒩`.
    pub elements: Vec<AlgebraElement>,
    pub description: String,
}

#[derive(Clone, Copy)]
enum Part {
    X,
    Y,
    Z,
}

struct Named {
    label: String,
    part: Part,
    root: usize,
    factor: Rational,
}

/// The normalization used for the published tables of su(n,1), sp(n,1) and
/// f4(−20); `None` for every other form.
pub fn apply_preset(form: &RealForm, raw: &NilpotentAlgebra) -> Result<Option<Preset>> {
    let m = form.model();
    let ctx = &form.ctx;
    if m.components().len() != 1 || ctx.real_rank() != 1 {
        return Ok(None);
    }
    let l = m.rank();
    let dim = m.ambient_dim();
    let vector = |coords: &[(usize, Rational)]| {
        let mut v = vec![int(0); dim];
        for &(i, x) in coords {
            v[i] += x;
        }
        m.lookup_vector(&RootVector(v)).ok_or_else(|| Error::Invariant("named root missing from the model".into()))
    };
    let one = int(1);
    let half = rat(1, 2);
    let named = |label: String, part: Part, root: usize, factor: Rational| Named { label, part, root, factor };
    let mut basis: Vec<Named> = Vec::new();
    let (reference, description) = match m.components()[0].kind.family {
        Family::A if l >= 2 && ctx.omega(0) == l - 1 => {
            let beta = vector(&[(0, one), (l, -one)])?;
            for i in 1..l {
                let a = vector(&[(0, one), (i, -one)])?;
                let flip = form.sgn(a) * form.c(ctx.sigma(a), a);
                basis.push(named(format!("X_alpha{i}"), Part::X, a, int(flip)));
                basis.push(named(format!("Y_alpha{i}"), Part::Y, a, one));
            }
            basis.push(named("Z_beta".into(), Part::Z, beta, one));
            (reference_table("heisenberg", Some(l))?, "X_alpha_i negated where sgn(alpha_i) c = -1")
        }
        Family::C if l >= 2 => {
            for i in 1..l - 1 {
                let a = vector(&[(0, one), (i + 1, one)])?;
                let b = vector(&[(0, one), (i + 1, -one)])?;
                basis.push(named(format!("X_alpha{i}"), Part::X, a, half));
                basis.push(named(format!("Y_alpha{i}"), Part::Y, a, half));
                basis.push(named(format!("X_beta{i}"), Part::X, b, half));
                basis.push(named(format!("Y_beta{i}"), Part::Y, b, half));
            }
            let gamma = vector(&[(0, int(2))])?;
            let delta = vector(&[(0, one), (1, one)])?;
            basis.push(named("X_gamma".into(), Part::X, gamma, half));
            basis.push(named("Y_gamma".into(), Part::Y, gamma, half));
            basis.push(named("Z_delta".into(), Part::Z, delta, rat(-1, 4)));
            (reference_table("quaternionic", Some(l - 1))?, "X, Y scaled by 1/2 and Z_delta by -1/4")
        }
        Family::F => {
            let simple: Vec<RootVector> = m.simple_roots().to_vec();
            let mut partial = RootVector::zero(dim);
            for (i, s) in simple.iter().enumerate() {
                partial = partial.add(s);
                let a = m.lookup_vector(&partial).ok_or_else(|| Error::Invariant("α_i is not a root".into()))?;
                let fx = if i == 0 { rat(-1, 2) } else { half };
                basis.push(named(format!("X_alpha{}", i + 1), Part::X, a, fx));
                basis.push(named(format!("Y_alpha{}", i + 1), Part::Y, a, half));
            }
            for i in 1..=3 {
                let g = vector(&[(0, one), (i, -one)])?;
                basis.push(named(format!("X_gamma{i}"), Part::X, g, half));
                basis.push(named(format!("Y_gamma{i}"), Part::Y, g, half));
            }
            let delta = vector(&[(0, one)])?;
            basis.push(named("Z_delta".into(), Part::Z, delta, rat(1, 4)));
            (reference_table("octonionic", None)?, "Z_delta scaled by 1/4, X_alpha1 by -1/2, the rest by 1/2")
        }
        _ => return Ok(None),
    };
    let b_index = raw.b_index.as_ref().ok_or_else(|| Error::Invariant("preset needs the raw N basis".into()))?;
    let position: BTreeMap<usize, usize> = b_index.iter().enumerate().map(|(p, &i)| (i, p)).collect();
    let mut elements = Vec::new();
    let mut symbols = Vec::new();
    let mut heights = Vec::new();
    for nm in &basis {
        let in_b = match nm.part {
            Part::X => form.x_of(nm.root),
            Part::Y => form.y_of(nm.root),
            Part::Z => form.z_of(nm.root),
        };
        let mut e = AlgebraElement::zero();
        for (k, c) in in_b.iter() {
            let p = position
                .get(&k)
                .ok_or_else(|| Error::Invariant(format!("{} is not in N", nm.label)))?;
            e.add_term(*p, c * nm.factor);
        }
        elements.push(e);
        let kind = match nm.part {
            Part::X => SymbolKind::X,
            Part::Y => SymbolKind::Y,
            Part::Z => SymbolKind::Z,
        };
        symbols.push(BasisSymbol { kind, root: m.root(nm.root).vector.clone() });
        debug_assert!(ctx.class(nm.root) != RootClass::Imaginary);
        heights.push(ctx.restricted_height(nm.root));
    }
    let mut provenance = raw.table.provenance.clone();
    provenance.notes.push(format!("preset basis: {description}"));
    let table = raw.table.change_basis(&elements, symbols, provenance)?;
    let labels = basis.into_iter().map(|nm| nm.label).collect();
    let split_g2 = vec![false; elements.len()];
    let algebra = NilpotentAlgebra::from_table(table, labels, heights, split_g2, None)?;
    Ok(Some(Preset { algebra, reference, elements, description: description.to_string() }))
}
