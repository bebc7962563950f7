//! The real basis `ℬ` of a real form, its multiplication table, the
//! Iwasawa-adapted basis and the complex structure of complex forms.
//!
//! Brackets are produced clause by clause from the adapted Chevalley
//! constants and the sign character; no complexification is formed.

mod element;
mod iwasawa;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use element::AlgebraElement;
pub use iwasawa::{iwasawa_basis, IwasawaBasis, IwasawaPart};

use crate::adaptation::{compute_sgn, Adapted};
use crate::chevalley::chevalley_constants;
use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{int, is_half_integer, is_integer, rat, Rational};
use crate::root_system::{RootSystemModel, RootVector};
use crate::satake::{catalog, compute_theta, FormClass, RealFormContext, RootClass, SatakeDiagram};
use element::Term;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SymbolKind {
    X,
    Y,
    Z,
    H1,
    H0,
    U,
    V,
    W,
}

impl fmt::Display for SymbolKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A named basis vector; `root` is the indexing root (a simple root for `H1`, `H0`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasisSymbol {
    pub kind: SymbolKind,
    pub root: RootVector,
}

impl fmt::Display for BasisSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind, self.root)
    }
}

/// Choices that fix a table.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub form: String,
    pub orientation: Vec<String>,
    pub delta1_star: Vec<usize>,
    pub complex_star_positive: Vec<RootVector>,
    pub adjusted_orbits: Vec<(usize, usize)>,
    #[serde(default)]
    pub notes: Vec<String>,
}

/// Brackets between basis vectors, stored densely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureTable {
    pub basis: Vec<BasisSymbol>,
    brackets: Vec<AlgebraElement>,
    pub provenance: Provenance,
}

#[derive(Serialize, Deserialize)]
struct BracketEntry {
    i: usize,
    j: usize,
    terms: Vec<Term>,
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    basis: Vec<BasisSymbol>,
    brackets: Vec<BracketEntry>,
    provenance: Provenance,
}

impl StructureTable {
    /// Builds a table from the brackets `[e_i, e_j]` for `i < j`.
    pub fn from_upper(
        basis: Vec<BasisSymbol>,
        provenance: Provenance,
        upper: impl Fn(usize, usize) -> AlgebraElement + Sync,
    ) -> Self {
        let n = basis.len();
        let rows: Vec<Vec<AlgebraElement>> =
            (0..n).into_par_iter().map(|i| (i + 1..n).map(|j| upper(i, j)).collect()).collect();
        let mut table = StructureTable { basis, brackets: vec![AlgebraElement::zero(); n * n], provenance };
        for (i, row) in rows.into_iter().enumerate() {
            for (off, e) in row.into_iter().enumerate() {
                table.set_bracket(i, i + 1 + off, e);
            }
        }
        table
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn bracket(&self, i: usize, j: usize) -> &AlgebraElement {
        &self.brackets[i * self.dim() + j]
    }

    /// Sets `[e_i, e_j] = e` and `[e_j, e_i] = −e`.
    pub fn set_bracket(&mut self, i: usize, j: usize, e: AlgebraElement) {
        let n = self.dim();
        self.brackets[j * n + i] = e.scaled(int(-1));
        self.brackets[i * n + j] = e;
    }

    pub fn bracket_with_basis(&self, a: &AlgebraElement, j: usize) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (i, c) in a.iter() {
            out.add_scaled(self.bracket(i, j), c);
        }
        out
    }

    pub fn bracket_elements(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (j, c) in b.iter() {
            out.add_scaled(&self.bracket_with_basis(a, j), c);
        }
        out
    }

    pub fn index_of(&self, symbol: &BasisSymbol) -> Option<usize> {
        self.basis.iter().position(|s| s == symbol)
    }

    /// Every nonzero coefficient `(i, j, k, c)` of `[e_i, e_j] = … + c e_k + …`.
    pub fn coefficients(&self) -> impl Iterator<Item = (usize, usize, usize, Rational)> + '_ {
        let n = self.dim();
        (0..n).flat_map(move |i| (0..n).flat_map(move |j| self.bracket(i, j).iter().map(move |(k, c)| (i, j, k, c))))
    }

    pub fn max_abs_coefficient(&self) -> Rational {
        self.coefficients().map(|(_, _, _, c)| if c < int(0) { -c } else { c }).max().unwrap_or_else(|| int(0))
    }

    pub fn all_half_integral(&self) -> bool {
        self.coefficients().all(|(_, _, _, c)| is_half_integer(&c))
    }

    pub fn all_integral(&self) -> bool {
        self.coefficients().all(|(_, _, _, c)| is_integer(&c))
    }

    /// The same algebra in the basis `elements` (coordinates in the current
    /// basis), which must span the whole space.
    pub fn change_basis(
        &self,
        elements: &[AlgebraElement],
        symbols: Vec<BasisSymbol>,
        provenance: Provenance,
    ) -> Result<StructureTable> {
        let n = self.dim();
        if elements.len() != n || symbols.len() != n {
            return Err(Error::Dimension { expected: n, got: elements.len().min(symbols.len()) });
        }
        let inv = change_inverse(elements, n)?;
        Ok(StructureTable::from_upper(symbols, provenance, |i, j| {
            let v = self.bracket_elements(&elements[i], &elements[j]).to_dense(n);
            AlgebraElement::from_dense(&linalg::mat_vec(&inv, &v))
        }))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let n = self.dim();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let e = self.bracket(i, j);
                if !e.is_zero() {
                    brackets.push(BracketEntry { i, j, terms: e.to_terms() });
                }
            }
        }
        let doc = TableJson { basis: self.basis.clone(), brackets, provenance: self.provenance.clone() };
        serde_json::to_value(doc).expect("serializable")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let doc: TableJson = serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let n = doc.basis.len();
        let mut table =
            StructureTable { basis: doc.basis, brackets: vec![AlgebraElement::zero(); n * n], provenance: doc.provenance };
        for b in doc.brackets {
            if b.i >= n || b.j >= n || b.i == b.j || b.terms.iter().any(|t| t.k >= n) {
                return Err(Error::Parse(format!("bracket entry [{}, {}] out of range", b.i, b.j)));
            }
            table.set_bracket(b.i, b.j, AlgebraElement::from_terms(&b.terms));
        }
        Ok(table)
    }

    /// One line `[A, B] = …` per nonzero bracket with `A` before `B`.
    pub fn render_text(&self) -> String {
        let n = self.dim();
        let mut out = String::new();
        for i in 0..n {
            for j in i + 1..n {
                let e = self.bracket(i, j);
                if !e.is_zero() {
                    let rhs = render_element(e, &self.basis);
                    out.push_str(&format!("[{}, {}] = {}\n", self.basis[i], self.basis[j], rhs));
                }
            }
        }
        out
    }
}

/// Inverse of the matrix whose columns are `elements`.
pub(crate) fn change_inverse(elements: &[AlgebraElement], n: usize) -> Result<linalg::Matrix<Rational>> {
    let mut m = linalg::zeros::<Rational>(n, n);
    for (c, e) in elements.iter().enumerate() {
        for (r, v) in e.iter() {
            m[r][c] = v;
        }
    }
    linalg::inverse(&m).ok_or_else(|| Error::Invariant("new basis vectors are linearly dependent".into()))
}

pub fn render_element(e: &AlgebraElement, basis: &[BasisSymbol]) -> String {
    render_with(e, |k| basis[k].to_string())
}

/// `2 A - 1/2 B + C` style rendering with names from `name`.
pub fn render_with(e: &AlgebraElement, name: impl Fn(usize) -> String) -> String {
    if e.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (n, (k, c)) in e.iter().enumerate() {
        let negative = c < int(0);
        let a = if negative { -c } else { c };
        out.push_str(match (n, negative) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        });
        if a != int(1) {
            out.push_str(&format!("{a} "));
        }
        out.push_str(&name(k));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Part {
    X,
    Y,
}

/// Kinds and root ids of `ℬ` in table order: `ℋ¹`, `ℋ⁰`, then root
/// symbols ordered by class (real, imaginary, complex), root id and kind.
fn basis_layout(ctx: &RealFormContext) -> (Vec<SymbolKind>, Vec<usize>) {
    let m = &ctx.model;
    let star = &ctx.delta1_star;
    let mut out: Vec<(SymbolKind, usize)> = Vec::new();
    for a in ctx.diagram.delta1() {
        if !star.contains(&a) {
            out.push((SymbolKind::H1, m.simple_id(a)));
        }
    }
    for a in 0..m.rank() {
        if ctx.is_shaded(a) || star.contains(&a) {
            out.push((SymbolKind::H0, m.simple_id(a)));
        }
    }
    let mut roots: Vec<(RootClass, usize, SymbolKind)> = Vec::new();
    for id in 0..m.len() {
        match ctx.class(id) {
            RootClass::Real => roots.push((RootClass::Real, id, SymbolKind::Z)),
            RootClass::Imaginary if m.is_positive(id) => {
                roots.push((RootClass::Imaginary, id, SymbolKind::X));
                roots.push((RootClass::Imaginary, id, SymbolKind::Y));
            }
            RootClass::Complex if ctx.in_complex_star(id) => {
                roots.push((RootClass::Complex, id, SymbolKind::X));
                roots.push((RootClass::Complex, id, SymbolKind::Y));
            }
            _ => {}
        }
    }
    roots.sort();
    out.extend(roots.into_iter().map(|(_, id, k)| (k, id)));
    out.into_iter().unzip()
}

/// A real form with its adapted constants, signs and `ℬ`-table.
#[derive(Clone, Debug)]
pub struct RealForm {
    pub ctx: RealFormContext,
    pub adapted: Adapted,
    pub table: StructureTable,
    /// Kind of each basis symbol.
    pub kinds: Vec<SymbolKind>,
    /// Root id of each basis symbol (the simple root for `H1`, `H0`).
    pub symbol_roots: Vec<usize>,
    index: HashMap<(SymbolKind, usize), usize>,
}

impl RealForm {
    pub fn from_catalog(name: &str, n: Option<usize>) -> Result<Self> {
        Self::build(&catalog(name, n)?)
    }

    pub fn build(diagram: &SatakeDiagram) -> Result<Self> {
        let ctx = compute_theta(diagram)?;
        let constants = chevalley_constants(&ctx.model)?;
        let adapted = compute_sgn(&ctx, &constants)?;
        Self::from_parts(ctx, adapted)
    }

    /// Builds the table from a context and realizable adapted constants.
    pub fn from_parts(ctx: RealFormContext, adapted: Adapted) -> Result<Self> {
        let model = ctx.model.clone();
        let (kinds, symbol_roots) = basis_layout(&ctx);
        if kinds.len() != model.len() + model.rank() {
            return Err(Error::Invariant(format!(
                "basis has {} elements, expected {}",
                kinds.len(),
                model.len() + model.rank()
            )));
        }
        let index = kinds.iter().zip(&symbol_roots).enumerate().map(|(i, (&k, &r))| ((k, r), i)).collect();
        let provenance = Provenance {
            form: ctx.diagram.name.clone(),
            orientation: adapted.table.provenance.clone(),
            delta1_star: ctx.delta1_star.clone(),
            complex_star_positive: (0..model.num_positive())
                .filter(|&id| ctx.in_complex_star(id))
                .map(|id| model.root(id).vector.clone())
                .collect(),
            adjusted_orbits: adapted.adjusted.iter().map(|d| (d.alpha, d.omega_alpha)).collect(),
            notes: Vec::new(),
        };
        let mut form = RealForm {
            ctx,
            adapted,
            table: StructureTable { basis: Vec::new(), brackets: Vec::new(), provenance: Provenance::default() },
            kinds,
            symbol_roots,
            index,
        };
        form.check_m_integral()?;
        let basis: Vec<BasisSymbol> = form
            .kinds
            .iter()
            .zip(&form.symbol_roots)
            .map(|(&kind, &r)| BasisSymbol { kind, root: model.root(r).vector.clone() })
            .collect();
        form.table = StructureTable::from_upper(basis, provenance, |i, j| form.bracket_basis(i, j));
        Ok(form)
    }

    pub fn model(&self) -> &Arc<RootSystemModel> {
        &self.ctx.model
    }

    pub fn sgn(&self, id: usize) -> i64 {
        self.adapted.sgn.get(id)
    }

    pub fn c(&self, a: usize, b: usize) -> i64 {
        self.adapted.table.get(a, b)
    }

    pub fn dim(&self) -> usize {
        self.table.dim()
    }

    pub fn symbol_index(&self, kind: SymbolKind, root: usize) -> Option<usize> {
        self.index.get(&(kind, root)).copied()
    }

    fn unit(&self, kind: SymbolKind, root: usize) -> AlgebraElement {
        let i = self
            .symbol_index(kind, root)
            .unwrap_or_else(|| panic!("{kind}{} is not in the basis", self.model().root(root).vector));
        AlgebraElement::unit(i)
    }

    /// `X_γ = x_γ + σ(x_γ)` in the basis `ℬ`.
    pub fn x_of(&self, g: usize) -> AlgebraElement {
        let m = self.model();
        match self.ctx.class(g) {
            RootClass::Real if self.sgn(g) == 1 => self.unit(SymbolKind::Z, g),
            RootClass::Real => AlgebraElement::zero(),
            RootClass::Imaginary => self.unit(SymbolKind::X, m.abs(g)),
            RootClass::Complex if self.ctx.in_complex_star(g) => self.unit(SymbolKind::X, g),
            RootClass::Complex => self.unit(SymbolKind::X, self.ctx.sigma(g)).scaled(int(self.sgn(g))),
        }
    }

    /// `Y_γ = i(x_γ − σ(x_γ))` in the basis `ℬ`.
    pub fn y_of(&self, g: usize) -> AlgebraElement {
        let m = self.model();
        match self.ctx.class(g) {
            RootClass::Real if self.sgn(g) == -1 => self.unit(SymbolKind::Z, g),
            RootClass::Real => AlgebraElement::zero(),
            RootClass::Imaginary if m.is_positive(g) => self.unit(SymbolKind::Y, g),
            RootClass::Imaginary => self.unit(SymbolKind::Y, m.neg(g)).scaled(int(-1)),
            RootClass::Complex if self.ctx.in_complex_star(g) => self.unit(SymbolKind::Y, g),
            RootClass::Complex => self.unit(SymbolKind::Y, self.ctx.sigma(g)).scaled(int(-self.sgn(g))),
        }
    }

    pub fn z_of(&self, g: usize) -> AlgebraElement {
        self.x_of(g).plus(&self.y_of(g))
    }

    fn part_of(&self, p: Part, g: usize) -> AlgebraElement {
        match p {
            Part::X => self.x_of(g),
            Part::Y => self.y_of(g),
        }
    }

    /// `m_{βγ} = n_{βγ} (β, β) / (γ, γ)`.
    fn m_coefficient(&self, beta: usize, gamma: usize) -> Rational {
        let g = self.model().gram();
        int(self.ctx.n[beta][gamma]) * g[beta][beta] / g[gamma][gamma]
    }

    fn check_m_integral(&self) -> Result<()> {
        for &b in self.ctx.diagram.delta0() {
            for g in self.ctx.diagram.delta1() {
                if !is_integer(&self.m_coefficient(b, g)) {
                    return Err(Error::Invariant(format!("m coefficient for α{b}, α{g} is not an integer")));
                }
            }
        }
        Ok(())
    }

    fn h1_simple(&self, j: usize) -> AlgebraElement {
        let m = self.model();
        if self.ctx.is_shaded(j) {
            AlgebraElement::zero()
        } else if self.ctx.delta1_star.contains(&j) {
            self.unit(SymbolKind::H1, m.simple_id(self.ctx.omega(j)))
        } else {
            self.unit(SymbolKind::H1, m.simple_id(j))
        }
    }

    fn h0_simple(&self, j: usize) -> AlgebraElement {
        let m = self.model();
        if self.ctx.is_shaded(j) || self.ctx.delta1_star.contains(&j) {
            return self.unit(SymbolKind::H0, m.simple_id(j));
        }
        let mut shaded = AlgebraElement::zero();
        for &b in self.ctx.diagram.delta0() {
            shaded.add_scaled(&self.unit(SymbolKind::H0, m.simple_id(b)), self.m_coefficient(b, j));
        }
        let w = self.ctx.omega(j);
        if w == j {
            shaded.scaled(rat(-1, 2))
        } else {
            self.unit(SymbolKind::H0, m.simple_id(w)).plus(&shaded).scaled(int(-1))
        }
    }

    /// `H¹_γ = h_γ + h_{γ^σ}` in the basis `ℋ¹`.
    pub fn h1_of(&self, g: usize) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (j, k) in self.model().dual_root_expansion_id(g).into_iter().enumerate() {
            out.add_scaled(&self.h1_simple(j), int(k));
        }
        out
    }

    /// `H⁰_γ = i(h_γ − h_{γ^σ})` in the basis `ℋ⁰`.
    pub fn h0_of(&self, g: usize) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (j, k) in self.model().dual_root_expansion_id(g).into_iter().enumerate() {
            out.add_scaled(&self.h0_simple(j), int(k));
        }
        out
    }

    /// `Z_γ` is `X_γ` or `Y_γ` according to `sgn(γ)`.
    fn root_part(&self, i: usize) -> Option<(Part, usize)> {
        let r = self.symbol_roots[i];
        match self.kinds[i] {
            SymbolKind::X => Some((Part::X, r)),
            SymbolKind::Y => Some((Part::Y, r)),
            SymbolKind::Z if self.sgn(r) == 1 => Some((Part::X, r)),
            SymbolKind::Z => Some((Part::Y, r)),
            _ => None,
        }
    }

    /// `⟨β ± β^σ, α_a⟩`.
    fn sigma_pairing(&self, b: usize, sign: i64, a: usize) -> i64 {
        let m = self.model();
        let s = self.ctx.sigma(b);
        let lambda: Vec<i64> = m.root(b).lattice.iter().zip(&m.root(s).lattice).map(|(x, y)| x + sign * y).collect();
        m.cartan_int(&lambda, m.simple_id(a))
    }

    /// `[H, P_β]` for a Cartan symbol `H` on simple root id `h`.
    fn cartan_action(&self, kind: SymbolKind, h: usize, p: Part, b: usize) -> AlgebraElement {
        let a = self.model().simple_index(h).expect("Cartan symbols sit on simple roots");
        match (kind, p) {
            (SymbolKind::H1, _) => self.part_of(p, b).scaled(int(self.sigma_pairing(b, 1, a))),
            (SymbolKind::H0, Part::X) => self.y_of(b).scaled(int(self.sigma_pairing(b, -1, a))),
            (SymbolKind::H0, Part::Y) => self.x_of(b).scaled(int(-self.sigma_pairing(b, -1, a))),
            _ => unreachable!("not a Cartan symbol"),
        }
    }

    fn bracket_basis(&self, i: usize, j: usize) -> AlgebraElement {
        match (self.root_part(i), self.root_part(j)) {
            (None, None) => AlgebraElement::zero(),
            (None, Some((p, b))) => self.cartan_action(self.kinds[i], self.symbol_roots[i], p, b),
            (Some((p, b)), None) => self.cartan_action(self.kinds[j], self.symbol_roots[j], p, b).scaled(int(-1)),
            (Some((p, g)), Some((q, d))) => self.bracket_parts(p, g, q, d),
        }
    }

    /// `[P_γ, Q_δ]` for arbitrary roots `γ, δ`.
    fn bracket_parts(&self, p: Part, g: usize, q: Part, d: usize) -> AlgebraElement {
        let m = self.model();
        let s = self.sgn(g);
        let sg = self.ctx.sigma(g);
        let zero = AlgebraElement::zero();
        if d == m.neg(g) {
            return match self.ctx.class(g) {
                RootClass::Real => match (p, q) {
                    (Part::X, Part::X) if s == 1 => self.h1_of(g).scaled(int(-2)),
                    (Part::Y, Part::Y) if s == -1 => self.h1_of(g).scaled(int(2)),
                    _ => zero,
                },
                // X_{−γ} = X_γ and Y_{−γ} = −Y_γ.
                RootClass::Imaginary => {
                    let f = if q == Part::X { 1 } else { -1 };
                    self.bracket_parts(p, g, q, g).scaled(int(f))
                }
                RootClass::Complex => match (p, q) {
                    (Part::X, Part::X) => self.h1_of(g).scaled(int(-1)),
                    (Part::Y, Part::Y) => self.h1_of(g),
                    _ => self.h0_of(g).scaled(int(-1)),
                },
            };
        }
        if d == g && self.ctx.class(g) == RootClass::Imaginary {
            return match (p, q) {
                (Part::X, Part::Y) => self.h0_of(g),
                (Part::Y, Part::X) => self.h0_of(g).scaled(int(-1)),
                _ => zero,
            };
        }
        if d == m.neg(sg) {
            // X_{−γ^σ} = sgn(γ) X_{−γ} and Y_{−γ^σ} = −sgn(γ) Y_{−γ}.
            let f = if q == Part::X { s } else { -s };
            return self.bracket_parts(p, g, q, m.neg(g)).scaled(int(f));
        }
        if p == Part::Y && q == Part::X {
            return self.bracket_parts(Part::X, d, Part::Y, g).scaled(int(-1));
        }
        let c1 = self.c(g, d);
        let c2 = s * self.c(sg, d);
        let term = |c: i64, sum: Option<usize>, part: Part| match sum {
            Some(r) if c != 0 => self.part_of(part, r).scaled(int(c)),
            _ => AlgebraElement::zero(),
        };
        let (s1, s2) = (m.sum(g, d), m.sum(sg, d));
        match (p, q) {
            (Part::X, Part::X) => term(c1, s1, Part::X).plus(&term(c2, s2, Part::X)),
            (Part::X, Part::Y) => term(c1, s1, Part::Y).plus(&term(c2, s2, Part::Y)),
            (Part::Y, Part::Y) => term(-c1, s1, Part::X).plus(&term(c2, s2, Part::X)),
            (Part::Y, Part::X) => unreachable!("swapped above"),
        }
    }

    /// The complex structure `J` on `ℬ` for complex forms, as images of the basis vectors.
    pub fn complex_structure(&self) -> Option<Vec<AlgebraElement>> {
        if self.ctx.classify_form() != FormClass::Complex {
            return None;
        }
        let m = self.model();
        let images = (0..self.dim())
            .map(|i| {
                let r = self.symbol_roots[i];
                match self.kinds[i] {
                    SymbolKind::X => self.unit(SymbolKind::Y, r),
                    SymbolKind::Y => self.unit(SymbolKind::X, r).scaled(int(-1)),
                    SymbolKind::H1 => {
                        let a = m.simple_index(r).expect("simple");
                        self.unit(SymbolKind::H0, m.simple_id(self.ctx.omega(a)))
                    }
                    SymbolKind::H0 => {
                        let a = m.simple_index(r).expect("simple");
                        self.unit(SymbolKind::H1, m.simple_id(self.ctx.omega(a))).scaled(int(-1))
                    }
                    k => unreachable!("{k} does not occur in a complex form"),
                }
            })
            .collect();
        Some(images)
    }
}

/// Applies the linear map with basis images `images`.
pub fn apply_linear(images: &[AlgebraElement], e: &AlgebraElement) -> AlgebraElement {
    let mut out = AlgebraElement::zero();
    for (i, c) in e.iter() {
        out.add_scaled(&images[i], c);
    }
    out
}

/// Checks `J² = −id` and `[J e_i, e_j] = J[e_i, e_j]` for all basis pairs.
pub fn verify_complex_structure(table: &StructureTable, j: &[AlgebraElement]) -> std::result::Result<(), String> {
    let n = table.dim();
    for i in 0..n {
        if apply_linear(j, &j[i]) != AlgebraElement::unit(i).scaled(int(-1)) {
            return Err(format!("J² ≠ −id on {}", table.basis[i]));
        }
    }
    (0..n).into_par_iter().try_for_each(|a| {
        for b in 0..n {
            let lhs = table.bracket_with_basis(&j[a], b);
            let rhs = apply_linear(j, table.bracket(a, b));
            if lhs != rhs {
                return Err(format!("[J{0}, {1}] ≠ J[{0}, {1}]", table.basis[a], table.basis[b]));
            }
        }
        Ok(())
    })
}

/// Checks the Jacobi identity on every basis triple; returns the number of triples.
pub fn verify_jacobi(table: &StructureTable) -> std::result::Result<usize, String> {
    let n = table.dim();
    (0..n)
        .into_par_iter()
        .map(|i| {
            let mut count = 0;
            for j in i + 1..n {
                let ij = table.bracket(i, j);
                for k in j + 1..n {
                    let mut sum = table.bracket_with_basis(ij, k);
                    sum.add_scaled(&table.bracket_with_basis(table.bracket(j, k), i), int(1));
                    sum.add_scaled(&table.bracket_with_basis(table.bracket(k, i), j), int(1));
                    if !sum.is_zero() {
                        return Err(format!(
                            "Jacobi fails on {}, {}, {}",
                            table.basis[i], table.basis[j], table.basis[k]
                        ));
                    }
                    count += 1;
                }
            }
            Ok(count)
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))
}

#[cfg(test)]
mod tests;
