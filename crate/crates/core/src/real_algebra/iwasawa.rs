use serde::Serialize;

use super::{AlgebraElement, BasisSymbol, RealForm, StructureTable, SymbolKind};
use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{int, is_integer, Rational};
use crate::satake::RootClass;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum IwasawaPart {
    K,
    A,
    N,
}

/// `𝒦 ∪ ℋ¹ ∪ 𝒩` with its coordinates in `ℬ` and its own table.
#[derive(Clone, Debug)]
pub struct IwasawaBasis {
    pub symbols: Vec<BasisSymbol>,
    pub parts: Vec<IwasawaPart>,
    /// Coordinates of each new basis vector in `ℬ`.
    pub elements: Vec<AlgebraElement>,
    pub table: StructureTable,
    pub determinant: Rational,
    /// Whether the inverse change of basis has integer entries.
    pub inverse_integral: bool,
}

impl IwasawaBasis {
    pub fn indices(&self, part: IwasawaPart) -> Vec<usize> {
        (0..self.parts.len()).filter(|&i| self.parts[i] == part).collect()
    }
}

/// Builds `𝒦` (`ℋ⁰`, `U_α`, `V_α`, imaginary `X_β`, `Y_β`, `W_γ`), `ℋ¹` and
/// `𝒩` (`X_α`, `Y_α` for `α ∈ Φ_ℂ^{*+}`, `Z_β` for `β ∈ Φ_ℝ^+`).
pub fn iwasawa_basis(form: &RealForm) -> Result<IwasawaBasis> {
    let m = form.model();
    let ctx = &form.ctx;
    let mut k = Vec::new();
    let mut a = Vec::new();
    let mut n = Vec::new();
    let sym = |kind, id: usize| BasisSymbol { kind, root: m.root(id).vector.clone() };
    for (i, &kind) in form.kinds.iter().enumerate() {
        let r = form.symbol_roots[i];
        match kind {
            SymbolKind::H0 => k.push((sym(kind, r), AlgebraElement::unit(i))),
            SymbolKind::H1 => a.push((sym(kind, r), AlgebraElement::unit(i))),
            _ => {}
        }
    }
    for id in 0..m.num_positive() {
        let neg = m.neg(id);
        match ctx.class(id) {
            RootClass::Complex if ctx.in_complex_star(id) => {
                let u = form.x_of(id).plus(&form.x_of(neg));
                let v = form.y_of(id).minus(&form.y_of(neg));
                k.push((sym(SymbolKind::U, id), u));
                k.push((sym(SymbolKind::V, id), v));
                n.push((sym(SymbolKind::X, id), form.x_of(id)));
                n.push((sym(SymbolKind::Y, id), form.y_of(id)));
            }
            RootClass::Imaginary => {
                k.push((sym(SymbolKind::X, id), form.x_of(id)));
                k.push((sym(SymbolKind::Y, id), form.y_of(id)));
            }
            RootClass::Real => {
                let z = form.z_of(id);
                let w = z.plus(&form.z_of(neg).scaled(int(form.sgn(id))));
                k.push((sym(SymbolKind::W, id), w));
                n.push((sym(SymbolKind::Z, id), z));
            }
            RootClass::Complex => {}
        }
    }
    let mut symbols = Vec::new();
    let mut parts = Vec::new();
    let mut elements = Vec::new();
    for (part, list) in [(IwasawaPart::K, k), (IwasawaPart::A, a), (IwasawaPart::N, n)] {
        for (s, e) in list {
            symbols.push(s);
            parts.push(part);
            elements.push(e);
        }
    }
    let dim = form.dim();
    if elements.len() != dim {
        return Err(Error::Dimension { expected: dim, got: elements.len() });
    }
    let mut matrix = linalg::zeros::<Rational>(dim, dim);
    for (c, e) in elements.iter().enumerate() {
        for (r, v) in e.iter() {
            matrix[r][c] = v;
        }
    }
    let determinant = linalg::determinant(&matrix);
    let inverse = linalg::inverse(&matrix).ok_or_else(|| Error::Invariant("Iwasawa vectors are dependent".into()))?;
    let inverse_integral = inverse.iter().flatten().all(is_integer);
    let mut provenance = form.table.provenance.clone();
    provenance.notes.push("Iwasawa basis K ∪ H1 ∪ N".into());
    let table = form.table.change_basis(&elements, symbols.clone(), provenance)?;
    Ok(IwasawaBasis { symbols, parts, elements, table, determinant, inverse_integral })
}
