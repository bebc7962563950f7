//! Signs `sgn(α)` of a σ- and τ-adapted Chevalley basis, `σ(x_α) = sgn(α) x_{α^σ}`.

use serde::Serialize;

use crate::chevalley::ChevalleyTable;
use crate::error::{Error, Result};
use crate::root_system::{RootSystemModel, RootVector};
use crate::satake::RealFormContext;

/// `sgn(α)` for every root id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignCharacter {
    values: Vec<i8>,
}

#[derive(Serialize)]
struct SignEntry {
    root: RootVector,
    sign: i64,
}

impl SignCharacter {
    pub fn get(&self, id: usize) -> i64 {
        self.values[id] as i64
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// JSON list of `{root, sign}` in root-id order.
    pub fn to_json(&self, model: &RootSystemModel) -> serde_json::Value {
        let entries: Vec<SignEntry> = (0..self.values.len())
            .map(|id| SignEntry { root: model.root(id).vector.clone(), sign: self.get(id) })
            .collect();
        serde_json::to_value(entries).expect("serializable")
    }
}

/// A two-element `ω`-orbit whose realizability product is not one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Defect {
    /// Simple-root index of the orbit representative `α`.
    pub alpha: usize,
    /// Simple-root index of `ω(α)`.
    pub omega_alpha: usize,
    pub product: i64,
}

/// Sign of `c_{a'b'} / c_{ab}`; both constants must be nonzero of equal size.
fn ratio_sign(top: i64, bottom: i64) -> Result<i64> {
    if top == 0 || bottom == 0 || top.abs() != bottom.abs() {
        return Err(Error::Invariant(format!("constants {top} and {bottom} are not equal up to sign")));
    }
    Ok(top.signum() * bottom.signum())
}

/// `Π c_{map(α_{i+1}) map(γ_i)} / c_{α_{i+1} γ_i}` along the decomposition of the positive root `root`.
fn decomposition_product(
    model: &RootSystemModel,
    table: &ChevalleyTable,
    root: usize,
    map: impl Fn(usize) -> usize,
) -> Result<i64> {
    let terms = model.simple_sum_decomposition_id(root)?.terms;
    let mut gamma = model.simple_id(terms[0]);
    let mut product = 1;
    for &t in &terms[1..] {
        let a = model.simple_id(t);
        product *= ratio_sign(table.get(map(a), map(gamma)), table.get(a, gamma))?;
        gamma = model
            .sum(gamma, a)
            .ok_or_else(|| Error::Invariant("partial sum of a decomposition is not a root".into()))?;
    }
    debug_assert_eq!(gamma, root);
    Ok(product)
}

/// Orbits `{α, ω(α)}` in `Δ₁` with some `n_{βα} > 0` whose product along the
/// decomposition of `−ω(α)^θ` is `−1`.
pub fn realizability_defect(ctx: &RealFormContext, table: &ChevalleyTable) -> Result<Vec<Defect>> {
    let model = &ctx.model;
    let mut defects = Vec::new();
    for &a in &ctx.delta1_star {
        if ctx.diagram.delta0().iter().all(|&b| ctx.n[b][a] == 0) {
            continue;
        }
        let w = ctx.omega(a);
        let target = model.neg(ctx.theta(model.simple_id(w)));
        let product = decomposition_product(model, table, target, |id| ctx.theta(id))?;
        if product != 1 {
            defects.push(Defect { alpha: a, omega_alpha: w, product });
        }
    }
    Ok(defects)
}

/// Negates `x_{±ω(α)}` for every defective orbit.
pub fn adjust_constants(model: &RootSystemModel, table: &ChevalleyTable, defects: &[Defect]) -> ChevalleyTable {
    if defects.is_empty() {
        return table.clone();
    }
    let negated: Vec<usize> = defects
        .iter()
        .flat_map(|d| {
            let id = model.simple_id(d.omega_alpha);
            [id, model.neg(id)]
        })
        .collect();
    let mut out = table.with_negated(model, &negated);
    for d in defects {
        out.provenance.push(format!("negated x_±α{} to satisfy the realizability criterion", d.omega_alpha));
    }
    out
}

/// Chevalley constants realizable by an adapted basis, with their signs.
#[derive(Clone, Debug)]
pub struct Adapted {
    pub table: ChevalleyTable,
    pub sgn: SignCharacter,
    /// Orbits corrected before computing the signs.
    pub adjusted: Vec<Defect>,
}

/// Computes `sgn` by the product formula over simple-root decompositions,
/// correcting the constants first when they are not realizable.
pub fn compute_sgn(ctx: &RealFormContext, table: &ChevalleyTable) -> Result<Adapted> {
    let model = &ctx.model;
    let defects = realizability_defect(ctx, table)?;
    let table = adjust_constants(model, table, &defects);
    if !realizability_defect(ctx, &table)?.is_empty() {
        return Err(Error::Invariant("constants still not realizable after adjustment".into()));
    }
    let mut values = vec![0i8; model.len()];
    for id in 0..model.num_positive() {
        let s = decomposition_product(model, &table, id, |r| ctx.sigma(r))? as i8;
        values[id] = s;
        values[model.neg(id)] = s;
    }
    Ok(Adapted { table, sgn: SignCharacter { values }, adjusted: defects })
}

/// Checks `sgn(α+β) = sgn(α) sgn(β) c_{α^σβ^σ}/c_{αβ}` on every addable pair,
/// `sgn = +1` on imaginary and simple roots, and `sgn(−α) = sgn(α)`.
/// Returns the number of pairs checked.
pub fn verify_sgn(ctx: &RealFormContext, table: &ChevalleyTable, sgn: &SignCharacter) -> std::result::Result<usize, String> {
    let model = &ctx.model;
    for id in 0..model.len() {
        if sgn.get(id) != sgn.get(model.neg(id)) {
            return Err(format!("sgn(α) ≠ sgn(−α) for α = {}", model.root(id).vector));
        }
        if ctx.class(id) == crate::satake::RootClass::Imaginary && sgn.get(id) != 1 {
            return Err(format!("sgn = −1 on imaginary root {}", model.root(id).vector));
        }
    }
    for i in ctx.diagram.delta1() {
        if sgn.get(model.simple_id(i)) != 1 {
            return Err(format!("sgn = −1 on simple root α{i}"));
        }
    }
    let mut pairs = 0;
    for a in 0..model.len() {
        for b in 0..model.len() {
            let Some(s) = model.sum(a, b) else { continue };
            let ratio = ratio_sign(table.get(ctx.sigma(a), ctx.sigma(b)), table.get(a, b)).map_err(|e| e.to_string())?;
            if sgn.get(s) != sgn.get(a) * sgn.get(b) * ratio {
                return Err(format!(
                    "recursion fails for α = {}, β = {}",
                    model.root(a).vector,
                    model.root(b).vector
                ));
            }
            pairs += 1;
        }
    }
    Ok(pairs)
}

/// `c_{α^σβ^σ} = c_{α^θβ^θ}` on every addable pair.
pub fn verify_sigma_theta_symmetry(ctx: &RealFormContext, table: &ChevalleyTable) -> bool {
    let model = &ctx.model;
    (0..model.len()).all(|a| {
        (0..model.len()).all(|b| table.get(ctx.sigma(a), ctx.sigma(b)) == table.get(ctx.theta(a), ctx.theta(b)))
    })
}
