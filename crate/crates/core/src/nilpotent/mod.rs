//! The Iwasawa algebra `𝔫`, its nilpotency data, the bound-four rescaling,
//! the group law in exponential coordinates and the lattice criterion.

mod bch;
mod presets;

use std::collections::BTreeMap;

use serde::Serialize;

pub use bch::{bch, bch_multiply, bernoulli, random_group_element, GroupElement, LieSpace};
pub use presets::{apply_preset, compare_tables, reference_table, Preset, ReferenceTable, TableMatch};

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{int, rat, Rational};
use crate::real_algebra::{AlgebraElement, RealForm, StructureTable, SymbolKind};
use crate::root_system::Family;
use crate::satake::{RealFormContext, RootClass};

/// `𝔫` with a basis of root vectors.
#[derive(Clone, Debug)]
pub struct NilpotentAlgebra {
    pub table: StructureTable,
    pub labels: Vec<String>,
    /// Restricted height of each basis vector.
    pub heights: Vec<i64>,
    /// Whether each basis vector lies in a split `G₂` ideal.
    pub split_g2: Vec<bool>,
    /// Index in `ℬ` of each basis vector, when the basis is a subset of `ℬ`.
    pub b_index: Option<Vec<usize>>,
    pub class: usize,
    pub center_basis: Vec<AlgebraElement>,
    pub grading: BTreeMap<i64, Vec<usize>>,
}

/// Diagonal rescaling `e'_i = factors[i] · e_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rescaling {
    #[serde(with = "crate::rational::serde_rational_vec")]
    pub factors: Vec<Rational>,
}

impl Rescaling {
    pub fn is_identity(&self) -> bool {
        self.factors.iter().all(|f| *f == int(1))
    }
}

impl NilpotentAlgebra {
    /// Computes class, center and grading for a table.
    pub fn from_table(
        table: StructureTable,
        labels: Vec<String>,
        heights: Vec<i64>,
        split_g2: Vec<bool>,
        b_index: Option<Vec<usize>>,
    ) -> Result<Self> {
        let class = nilpotency_class(&table)?;
        let center_basis = center(&table);
        let mut grading: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (i, &h) in heights.iter().enumerate() {
            grading.entry(h).or_default().push(i);
        }
        Ok(NilpotentAlgebra { table, labels, heights, split_g2, b_index, class, center_basis, grading })
    }

    pub fn dim(&self) -> usize {
        self.table.dim()
    }

    pub fn is_abelian(&self) -> bool {
        self.table.coefficients().next().is_none()
    }

    pub fn max_abs_constant(&self) -> Rational {
        self.table.max_abs_coefficient()
    }

    /// The algebra in the basis `factors[i] · e_i`.
    pub fn rescaled(&self, rescaling: &Rescaling) -> Result<NilpotentAlgebra> {
        let elements: Vec<AlgebraElement> =
            rescaling.factors.iter().enumerate().map(|(i, &f)| AlgebraElement::term(i, f)).collect();
        let mut provenance = self.table.provenance.clone();
        provenance.notes.push("diagonal rescaling of N".into());
        let table = self.table.change_basis(&elements, self.table.basis.clone(), provenance)?;
        NilpotentAlgebra::from_table(table, self.labels.clone(), self.heights.clone(), self.split_g2.clone(), None)
    }

    /// Checks that brackets of heights `i`, `j` lie in the height `i + j` span.
    pub fn grading_respected(&self) -> bool {
        self.table.coefficients().all(|(i, j, k, _)| self.heights[k] == self.heights[i] + self.heights[j])
    }
}

/// Extracts `𝒩 = {X_α, Y_α : α ∈ Φ_ℂ^{*+}} ∪ {Z_β : β ∈ Φ_ℝ^+}` from the
/// `ℬ`-table, ordered by restricted height and then by position in `ℬ`.
pub fn extract_n(form: &RealForm) -> Result<NilpotentAlgebra> {
    let m = form.model();
    let ctx = &form.ctx;
    let mut picked: Vec<(i64, usize)> = Vec::new();
    for (i, &kind) in form.kinds.iter().enumerate() {
        let r = form.symbol_roots[i];
        let in_n = match kind {
            SymbolKind::Z => m.is_positive(r),
            SymbolKind::X | SymbolKind::Y => m.is_positive(r) && ctx.class(r) == RootClass::Complex,
            _ => false,
        };
        if in_n {
            picked.push((ctx.restricted_height(r), i));
        }
    }
    picked.sort();
    let b_index: Vec<usize> = picked.iter().map(|&(_, i)| i).collect();
    let position: BTreeMap<usize, usize> = b_index.iter().enumerate().map(|(p, &i)| (i, p)).collect();
    for &a in &b_index {
        for &b in &b_index {
            if form.table.bracket(a, b).iter().any(|(k, _)| !position.contains_key(&k)) {
                return Err(Error::Invariant(format!(
                    "[{}, {}] leaves N",
                    form.table.basis[a], form.table.basis[b]
                )));
            }
        }
    }
    let mut provenance = form.table.provenance.clone();
    provenance.notes.push("Iwasawa n-algebra".into());
    let table = StructureTable::from_upper(
        b_index.iter().map(|&i| form.table.basis[i].clone()).collect(),
        provenance,
        |a, b| {
            let mut out = AlgebraElement::zero();
            for (k, c) in form.table.bracket(b_index[a], b_index[b]).iter() {
                out.add_term(position[&k], c);
            }
            out
        },
    );
    let heights = picked.iter().map(|&(h, _)| h).collect();
    let split_g2 = b_index.iter().map(|&i| in_split_g2(ctx, form.symbol_roots[i])).collect();
    let labels = b_index.iter().map(|&i| form.table.basis[i].to_string()).collect();
    NilpotentAlgebra::from_table(table, labels, heights, split_g2, Some(b_index))
}

fn in_split_g2(ctx: &RealFormContext, root: usize) -> bool {
    let m = &ctx.model;
    let comp = &m.components()[m.component_of_root(root)];
    comp.kind.family == Family::G && comp.simple.clone().all(|i| !ctx.is_shaded(i) && ctx.omega(i) == i)
}

/// Halves every basis vector in a split `G₂` ideal; no other rescaling.
pub fn rescale_to_bound(algebra: &NilpotentAlgebra) -> Result<(NilpotentAlgebra, Rescaling)> {
    let factors = algebra.split_g2.iter().map(|&g| if g { rat(1, 2) } else { int(1) }).collect();
    let rescaling = Rescaling { factors };
    if rescaling.is_identity() {
        return Ok((algebra.clone(), rescaling));
    }
    Ok((algebra.rescaled(&rescaling)?, rescaling))
}

/// Smallest `c` with every `(c+1)`-fold bracket zero, via the lower central
/// series; zero for the zero algebra.
pub fn nilpotency_class(table: &StructureTable) -> Result<usize> {
    let n = table.dim();
    let mut current: Vec<Vec<Rational>> = linalg::identity(n);
    let mut class = 0;
    while !current.is_empty() {
        class += 1;
        let mut next: Vec<Vec<Rational>> = Vec::new();
        for v in &current {
            let e = AlgebraElement::from_dense(v);
            for i in 0..n {
                let b = table.bracket_elements(&AlgebraElement::unit(i), &e);
                if !b.is_zero() {
                    next.push(b.to_dense(n));
                }
            }
        }
        let rank = linalg::rref(&mut next, n).len();
        next.truncate(rank);
        if rank >= current.len() && rank > 0 {
            return Err(Error::Invariant("lower central series does not descend".into()));
        }
        current = next;
    }
    Ok(class)
}

/// Basis of the center, as the kernel of `v ↦ ([e_i, v])_i`.
pub fn center(table: &StructureTable) -> Vec<AlgebraElement> {
    let n = table.dim();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for i in 0..n {
        let mut block = vec![vec![int(0); n]; n];
        for j in 0..n {
            for (k, c) in table.bracket(i, j).iter() {
                block[k][j] = c;
            }
        }
        rows.extend(block);
    }
    linalg::nullspace(&rows, n).iter().map(|v| AlgebraElement::from_dense(v)).collect()
}

/// Malcev criterion report.
#[derive(Clone, Debug, Serialize)]
pub struct LatticeReport {
    pub rational_constants: bool,
    pub integral_after_rescaling: bool,
    #[serde(with = "crate::rational::serde_rational")]
    pub max_abs_constant: Rational,
    pub rescaling: Rescaling,
    pub satisfied: bool,
}

/// Rational constants always hold here; the witness is the integer basis from [`rescale_to_bound`].
pub fn lattice_check(algebra: &NilpotentAlgebra) -> Result<LatticeReport> {
    let (bounded, rescaling) = rescale_to_bound(algebra)?;
    let integral = bounded.table.all_integral();
    Ok(LatticeReport {
        rational_constants: true,
        integral_after_rescaling: integral,
        max_abs_constant: bounded.max_abs_constant(),
        rescaling,
        satisfied: integral,
    })
}

/// `(|Σ⁺| + rank_ℝ, rank_ℝ)`: dimension of the exponential chart of `G/K` and of its flats.
pub fn chart_dimensions(ctx: &RealFormContext) -> (usize, usize) {
    let rank = ctx.real_rank();
    (ctx.positive_sigma().len() + rank, rank)
}
