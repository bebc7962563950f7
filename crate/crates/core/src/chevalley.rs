//! Chevalley structure constants from oriented Dynkin diagrams.
//!
//! Simply-laced types take `c_{αβ} = ε(α, β)` for the asymmetry function of
//! an oriented diagram. `B`, `C`, `F4` and `G2` are obtained by folding
//! `D_{l+1}`, `A_{2l−1}`, `E6` and `D4` along a diagram automorphism; their
//! constants are read off the brackets of orbit sums `y_α = Σ x_{α′}`.

use serde::Serialize;
use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::root_system::{Family, RootSystemModel, RootVector, SimpleType, TypeLabel};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedDynkinDiagram {
    pub nodes: usize,
    /// Directed edges `(from, to)`, one per Dynkin edge.
    pub edges: Vec<(usize, usize)>,
    pub automorphism: Option<Vec<usize>>,
    pub rule: String,
}

impl OrientedDynkinDiagram {
    pub fn is_invariant(&self, perm: &[usize]) -> bool {
        self.edges.iter().all(|&(a, b)| self.edges.contains(&(perm[a], perm[b])))
    }
}

fn adjacency(model: &RootSystemModel) -> Vec<Vec<usize>> {
    let c = model.cartan_matrix();
    (0..model.rank())
        .map(|i| (0..model.rank()).filter(|&j| j != i && c[i][j] != 0).collect())
        .collect()
}

fn is_automorphism(model: &RootSystemModel, perm: &[usize]) -> bool {
    let l = model.rank();
    let mut seen = vec![false; l];
    if perm.len() != l || perm.iter().any(|&p| p >= l || std::mem::replace(&mut seen[p], true)) {
        return false;
    }
    let c = model.cartan_matrix();
    (0..l).all(|i| (0..l).all(|j| c[perm[i]][perm[j]] == c[i][j]))
}

fn order(perm: &[usize]) -> usize {
    let mut k = 1;
    let mut cur: Vec<usize> = perm.to_vec();
    while cur.iter().enumerate().any(|(i, &p)| i != p) {
        cur = cur.iter().map(|&p| perm[p]).collect();
        k += 1;
    }
    k
}

/// Node every arrow points toward (or, for `E6`, away from).
fn orientation_anchor(t: SimpleType) -> (usize, bool, &'static str) {
    let l = t.rank;
    match t.family {
        Family::A => ((l - 1) / 2, true, "arrows toward the middle node"),
        Family::D => (l - 3, true, "arrows toward the branch node"),
        Family::E if l == 6 => (3, false, "arrows away from the end node attached to the branch node"),
        Family::E => (3, true, "arrows toward the branch node"),
        _ => unreachable!("not simply laced"),
    }
}

/// Deterministic orientation of a simply-laced diagram. When an automorphism
/// is supplied it must preserve the diagram, and the orientation is checked
/// to be invariant under it.
pub fn canonical_orientation(
    model: &RootSystemModel,
    automorphism: Option<Vec<usize>>,
) -> Result<OrientedDynkinDiagram> {
    if !model.label().is_simply_laced() {
        return Err(Error::Domain(format!("{} is not simply laced", model.label())));
    }
    let adj = adjacency(model);
    let mut edges = Vec::new();
    let mut rules = Vec::new();
    for comp in model.components() {
        let (anchor, toward, rule) = orientation_anchor(comp.kind);
        rules.push(format!("{}: {rule}", comp.kind));
        let root = comp.simple.start + anchor;
        let mut dist = vec![usize::MAX; model.rank()];
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        for u in comp.simple.clone() {
            for &v in &adj[u] {
                let (near, far) = if dist[u] < dist[v] { (u, v) } else { continue };
                edges.push(if toward { (far, near) } else { (near, far) });
            }
        }
    }
    edges.sort();
    let diagram = OrientedDynkinDiagram { nodes: model.rank(), edges, automorphism, rule: rules.join("; ") };
    if let Some(perm) = &diagram.automorphism {
        if !is_automorphism(model, perm) {
            return Err(Error::Domain("supplied permutation is not a diagram automorphism".into()));
        }
        if !matches!(order(perm), 2 | 3) {
            return Err(Error::Domain("diagram automorphism must have order 2 or 3".into()));
        }
        if !diagram.is_invariant(perm) {
            return Err(Error::Domain("no invariant orientation for this automorphism".into()));
        }
    }
    Ok(diagram)
}

/// Bimultiplicative sign function on the root lattice, stored through its
/// values on pairs of simple roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsymmetryTable {
    pub signs: Vec<Vec<i8>>,
}

impl AsymmetryTable {
    /// `ε(a, b)` for lattice elements in simple-root coordinates.
    pub fn eval(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut parity = 0i64;
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if self.signs[i][j] < 0 {
                    parity += x * y;
                }
            }
        }
        if parity.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }
}

/// `ε(α_i, α_j) = −1` exactly when `i = j` or the arrow points `i → j`.
pub fn build_asymmetry(diagram: &OrientedDynkinDiagram) -> AsymmetryTable {
    let mut signs = vec![vec![1i8; diagram.nodes]; diagram.nodes];
    for (i, row) in signs.iter_mut().enumerate() {
        row[i] = -1;
    }
    for &(a, b) in &diagram.edges {
        signs[a][b] = -1;
    }
    AsymmetryTable { signs }
}

/// Antisymmetric structure constants `c_{αβ}` indexed by root ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChevalleyTable {
    size: usize,
    constants: Vec<i8>,
    /// How the constants were produced, one entry per summand.
    pub provenance: Vec<String>,
}

#[derive(Serialize)]
struct ConstantEntry {
    alpha: RootVector,
    beta: RootVector,
    c: i64,
}

impl ChevalleyTable {
    fn empty(size: usize) -> Self {
        ChevalleyTable { size, constants: vec![0; size * size], provenance: Vec::new() }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// `c_{αβ}`, zero when `α + β` is not a root.
    pub fn get(&self, a: usize, b: usize) -> i64 {
        self.constants[a * self.size + b] as i64
    }

    fn set(&mut self, a: usize, b: usize, c: i64) {
        self.constants[a * self.size + b] = c as i8;
    }

    /// Table for the basis in which `x_γ` is replaced by `−x_γ` for every `γ`
    /// in `negated`: `c_{γδ}` flips when an odd number of `γ, δ, γ+δ` lie in
    /// the set.
    pub fn with_negated(&self, model: &RootSystemModel, negated: &[usize]) -> ChevalleyTable {
        let mut flip = vec![false; self.size];
        for &g in negated {
            flip[g] = true;
        }
        let mut out = self.clone();
        for a in 0..self.size {
            for b in 0..self.size {
                if let Some(s) = model.sum(a, b) {
                    if flip[a] ^ flip[b] ^ flip[s] {
                        out.set(a, b, -self.get(a, b));
                    }
                }
            }
        }
        out
    }

    /// JSON list of `{alpha, beta, c}` over all addable pairs.
    pub fn to_json(&self, model: &RootSystemModel) -> serde_json::Value {
        let mut entries = Vec::new();
        for a in 0..self.size {
            for b in 0..self.size {
                let c = self.get(a, b);
                if c != 0 {
                    entries.push(ConstantEntry {
                        alpha: model.root(a).vector.clone(),
                        beta: model.root(b).vector.clone(),
                        c,
                    });
                }
            }
        }
        serde_json::to_value(entries).expect("serializable")
    }
}

/// `c_{αβ} = ε(α, β)` for every addable pair.
pub fn simply_laced_constants(model: &RootSystemModel, table: &AsymmetryTable) -> Result<ChevalleyTable> {
    if !model.label().is_simply_laced() {
        return Err(Error::Domain(format!("{} is not simply laced", model.label())));
    }
    let n = model.len();
    let mut out = ChevalleyTable::empty(n);
    for a in 0..n {
        for b in 0..n {
            if model.sum(a, b).is_some() {
                out.set(a, b, table.eval(&model.root(a).lattice, &model.root(b).lattice));
            }
        }
    }
    Ok(out)
}

/// Result of folding a simply-laced system along a diagram automorphism.
#[derive(Clone, Debug)]
pub struct Folding {
    pub model: RootSystemModel,
    pub table: ChevalleyTable,
    /// For each folded root id, the big-system orbit it comes from; the first
    /// entry is the primed representative (lexicographically smallest).
    pub correspondence: Vec<Vec<usize>>,
}

/// Node orbits of the big diagram listed in the simple-root order of the
/// folded standard model, plus the folded type.
fn folding_layout(big: SimpleType, perm: &[usize]) -> Result<(SimpleType, Vec<Vec<usize>>)> {
    let l = big.rank;
    let unsupported = || Error::Domain(format!("unsupported folding of {big} by {perm:?}"));
    let flip_a: Vec<usize> = (0..l).map(|i| l - 1 - i).collect();
    let mut flip_d: Vec<usize> = (0..l).collect();
    if l >= 3 {
        flip_d.swap(l - 2, l - 1);
    }
    match big.family {
        Family::A if l % 2 == 1 && l >= 3 && perm == flip_a => {
            let k = (l + 1) / 2;
            let mut orbits: Vec<Vec<usize>> = (0..k - 1).map(|j| vec![j, l - 1 - j]).collect();
            orbits.push(vec![k - 1]);
            Ok((SimpleType::new(Family::C, k)?, orbits))
        }
        Family::D if perm == flip_d => {
            let k = l - 1;
            let mut orbits: Vec<Vec<usize>> = (0..k - 1).map(|j| vec![j]).collect();
            orbits.push(vec![l - 2, l - 1]);
            Ok((SimpleType::new(Family::B, k)?, orbits))
        }
        Family::D if l == 4 && order(perm) == 3 && perm[1] == 1 => {
            Ok((SimpleType::new(Family::G, 2)?, vec![vec![0, 2, 3], vec![1]]))
        }
        Family::E if l == 6 && perm == [5, 4, 2, 3, 1, 0] => Ok((
            SimpleType::new(Family::F, 4)?,
            vec![vec![0, 5], vec![1, 4], vec![2], vec![3]],
        )),
        _ => Err(unsupported()),
    }
}

/// Folds `big` along `diagram.automorphism`, computing every constant from
/// the bracket of orbit sums and checking it against `ε(α′, β′)(p+1)`.
pub fn fold(big: &RootSystemModel, diagram: &OrientedDynkinDiagram) -> Result<Folding> {
    let perm = diagram
        .automorphism
        .as_ref()
        .ok_or_else(|| Error::Domain("folding needs an automorphism".into()))?;
    let [big_type] = big.label().0[..] else {
        return Err(Error::Domain("folding needs an irreducible system".into()));
    };
    if !diagram.is_invariant(perm) {
        return Err(Error::Domain("orientation is not invariant under the automorphism".into()));
    }
    let (small_type, node_orbits) = folding_layout(big_type, perm)?;
    let small = RootSystemModel::build(&TypeLabel::simple(small_type))?;
    let eps = build_asymmetry(diagram);
    let big_table = simply_laced_constants(big, &eps)?;

    let act = |k: &[i64]| -> Vec<i64> {
        let mut out = vec![0; k.len()];
        for (i, &x) in k.iter().enumerate() {
            out[perm[i]] = x;
        }
        out
    };
    let n_small = small.len();
    let mut correspondence: Vec<Vec<usize>> = vec![Vec::new(); n_small];
    let mut owner = vec![usize::MAX; big.len()];
    for id in 0..big.len() {
        if owner[id] != usize::MAX {
            continue;
        }
        let mut orbit = vec![id];
        let mut cur = big.root(id).lattice.clone();
        loop {
            cur = act(&cur);
            let next = big.lookup_lattice(&cur).ok_or_else(|| Error::Invariant("automorphism leaves Φ".into()))?;
            if next == id {
                break;
            }
            orbit.push(next);
        }
        let coords: Vec<i64> = node_orbits.iter().map(|s| s.iter().map(|&j| big.root(id).lattice[j]).sum()).collect();
        let sid = small
            .lookup_lattice(&coords)
            .ok_or_else(|| Error::Invariant(format!("orbit average {coords:?} is not a folded root")))?;
        if !correspondence[sid].is_empty() {
            return Err(Error::Invariant("two orbits fold to the same root".into()));
        }
        orbit.sort_by(|&a, &b| big.root(a).vector.cmp(&big.root(b).vector));
        for &o in &orbit {
            owner[o] = sid;
        }
        let long = orbit.len() == 1;
        let is_long_small = small.root(sid).norm == small.roots().iter().map(|r| r.norm).max().expect("roots");
        if long != is_long_small {
            return Err(Error::Invariant("fixed roots must fold to long roots".into()));
        }
        correspondence[sid] = orbit;
    }
    if correspondence.iter().any(Vec::is_empty) {
        return Err(Error::Invariant("folded root without preimage".into()));
    }

    let mut table = ChevalleyTable::empty(n_small);
    for a in 0..n_small {
        for b in 0..n_small {
            let Some(s) = small.sum(a, b) else { continue };
            let target = &correspondence[s];
            let mut coeff = vec![0i64; target.len()];
            for &x in &correspondence[a] {
                for &z in &correspondence[b] {
                    let Some(w) = big.sum(x, z) else { continue };
                    let pos = target.iter().position(|&t| t == w).ok_or_else(|| {
                        Error::Invariant("bracket of orbit sums leaves the target orbit".into())
                    })?;
                    coeff[pos] += big_table.get(x, z);
                }
            }
            let c = coeff[0];
            if c == 0 || coeff.iter().any(|&x| x != c) {
                return Err(Error::Invariant("bracket of orbit sums is not a multiple of an orbit sum".into()));
            }
            let alpha_p = correspondence[a][0];
            let beta_p = correspondence[b]
                .iter()
                .copied()
                .find(|&z| big.sum(alpha_p, z).is_some())
                .ok_or_else(|| Error::Invariant("no primed pair with a root sum".into()))?;
            let mut p = 0i64;
            let mut cur = a;
            while let Some(next) = small.sum(cur, small.neg(b)) {
                p += 1;
                cur = next;
            }
            let formula = eps.eval(&big.root(alpha_p).lattice, &big.root(beta_p).lattice) * (p + 1);
            if formula != c {
                return Err(Error::Invariant(format!("folded constant {c} disagrees with ε(α′,β′)(p+1) = {formula}")));
            }
            table.set(a, b, c);
        }
    }
    table.provenance.push(format!("{small_type} folded from {big_type} ({})", diagram.rule));
    Ok(Folding { model: small, table, correspondence })
}

/// The simply-laced type and automorphism that fold onto `t`.
pub fn folding_source(t: SimpleType) -> Option<(SimpleType, Vec<usize>)> {
    let l = t.rank;
    match t.family {
        Family::C => {
            let n = 2 * l - 1;
            Some((SimpleType { family: Family::A, rank: n }, (0..n).map(|i| n - 1 - i).collect()))
        }
        Family::B => {
            let n = l + 1;
            let mut p: Vec<usize> = (0..n).collect();
            p.swap(n - 2, n - 1);
            Some((SimpleType { family: Family::D, rank: n }, p))
        }
        Family::F => Some((SimpleType { family: Family::E, rank: 6 }, vec![5, 4, 2, 3, 1, 0])),
        Family::G => Some((SimpleType { family: Family::D, rank: 4 }, vec![2, 1, 3, 0])),
        _ => None,
    }
}

/// Constants for one irreducible type.
pub fn chevalley_constants_simple(t: SimpleType) -> Result<(RootSystemModel, ChevalleyTable)> {
    let label = TypeLabel::simple(t);
    if t.is_simply_laced() {
        let model = RootSystemModel::build(&label)?;
        let diagram = canonical_orientation(&model, None)?;
        let mut table = simply_laced_constants(&model, &build_asymmetry(&diagram))?;
        table.provenance.push(diagram.rule);
        Ok((model, table))
    } else {
        let (big_type, perm) = folding_source(t).expect("non-simply-laced types fold");
        let big = RootSystemModel::build(&TypeLabel::simple(big_type))?;
        let diagram = canonical_orientation(&big, Some(perm))?;
        let f = fold(&big, &diagram)?;
        Ok((f.model, f.table))
    }
}

/// Constants for a model built from `label`; summands are treated separately.
pub fn chevalley_constants(model: &RootSystemModel) -> Result<ChevalleyTable> {
    let n = model.len();
    let mut out = ChevalleyTable::empty(n);
    for comp in model.components() {
        let (small, table) = chevalley_constants_simple(comp.kind)?;
        let local = |id: usize| -> Option<usize> {
            let k = &model.root(id).lattice;
            if k.iter().enumerate().any(|(i, &x)| x != 0 && !comp.simple.contains(&i)) {
                return None;
            }
            small.lookup_lattice(&k[comp.simple.clone()])
        };
        let ids: Vec<(usize, usize)> = (0..n).filter_map(|g| local(g).map(|l| (g, l))).collect();
        for &(ga, la) in &ids {
            for &(gb, lb) in &ids {
                let c = table.get(la, lb);
                if c != 0 {
                    out.set(ga, gb, c);
                }
            }
        }
        out.provenance.extend(table.provenance);
    }
    Ok(out)
}

/// Builds the model and constants for a type label.
pub fn constants_for_label(label: &TypeLabel) -> Result<(RootSystemModel, ChevalleyTable)> {
    let model = RootSystemModel::build(label)?;
    let table = chevalley_constants(&model)?;
    Ok((model, table))
}

/// Checks antisymmetry, `c_{αβ} = c_{−α,−β}`, `|c_{αβ}| = r + 1`, and that
/// constants vanish exactly on non-addable pairs.
pub fn verify_axioms(model: &RootSystemModel, table: &ChevalleyTable) -> std::result::Result<usize, String> {
    let n = model.len();
    let mut checked = 0;
    for a in 0..n {
        for b in 0..n {
            let c = table.get(a, b);
            match model.sum(a, b) {
                None if c != 0 => return Err(format!("nonzero constant on non-addable pair ({a},{b})")),
                None => continue,
                Some(_) => {}
            }
            if c != -table.get(b, a) {
                return Err(format!("antisymmetry fails at ({a},{b})"));
            }
            if c != table.get(model.neg(a), model.neg(b)) {
                return Err(format!("c_{{αβ}} ≠ c_{{−α,−β}} at ({a},{b})"));
            }
            let (r, _) = model.root_string_id(a, b).map_err(|e| e.to_string())?;
            if c.unsigned_abs() as usize != r + 1 {
                return Err(format!("|c| = {} but r + 1 = {} at ({a},{b})", c.abs(), r + 1));
            }
            checked += 1;
        }
    }
    Ok(checked)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn simple(s: &str) -> SimpleType {
        s.parse().unwrap()
    }

    fn big(s: &str) -> RootSystemModel {
        RootSystemModel::build(&s.parse().unwrap()).unwrap()
    }

    fn eps(diagram: &OrientedDynkinDiagram, a: &[i64], b: &[i64]) -> i64 {
        build_asymmetry(diagram).eval(a, b)
    }

    #[test]
    fn a3_flip_points_to_middle() {
        let m = big("A3");
        let d = canonical_orientation(&m, Some(vec![2, 1, 0])).unwrap();
        assert_eq!(d.edges, vec![(0, 1), (2, 1)]);
    }

    #[test]
    fn a_odd_flip_reproduces_right_half_signs() {
        for l in 2..6usize {
            let n = 2 * l - 1;
            let m = big(&format!("A{n}"));
            let d = canonical_orientation(&m, Some((0..n).map(|i| n - 1 - i).collect())).unwrap();
            for i in 1..=l - 2 {
                // ε(η_{2l−i−1}, η_{2l−i−2}) = −1 with 1-based η.
                let mut a = vec![0; n];
                let mut b = vec![0; n];
                a[2 * l - i - 2] = 1;
                b[2 * l - i - 3] = 1;
                assert_eq!(eps(&d, &a, &b), -1);
            }
        }
    }

    #[test]
    fn e6_orientation_reproduces_printed_values() {
        let m = big("E6");
        let d = canonical_orientation(&m, Some(vec![5, 4, 2, 3, 1, 0])).unwrap();
        let e = |a: [i64; 6], b: [i64; 6]| eps(&d, &a, &b);
        assert_eq!(e([0, 0, 0, 0, 0, 1], [1, 1, 1, 0, 1, 0]), 1);
        assert_eq!(e([1, 2, 2, 1, 1, 0], [0, 0, 0, 0, 0, 1]), -1);
        assert_eq!(e([1, 1, 2, 1, 1, 0], [0, 0, 0, 0, 1, 1]), 1);
        assert_eq!(e([1, 1, 1, 1, 1, 0], [0, 0, 1, 0, 1, 1]), -1);
        assert_eq!(e([1, 1, 1, 0, 1, 0], [0, 0, 1, 1, 1, 1]), 1);
        assert_eq!(e([0, 0, 0, 0, 0, 1], [1, 1, 1, 1, 1, 0]), 1);
        assert_eq!(e([0, 0, 0, 0, 0, 1], [1, 1, 2, 1, 1, 0]), 1);
        assert_eq!(e([1, 1, 0, 0, 0, 0], [0, 0, 1, 0, 1, 1]), 1);
        assert_eq!(e([1, 1, 0, 0, 0, 0], [0, 0, 1, 1, 1, 1]), 1);
        assert_eq!(e([1, 1, 1, 0, 0, 0], [0, 0, 1, 1, 1, 1]), 1);
    }

    #[test]
    fn epsilon_basic_values() {
        let m = big("A2");
        let d = canonical_orientation(&m, None).unwrap();
        assert_eq!(d.edges, vec![(1, 0)]);
        assert_eq!(eps(&d, &[1, 0], &[0, 0]), 1);
        for r in m.roots() {
            assert_eq!(eps(&d, &r.lattice, &r.lattice), -1);
        }
        let forward = OrientedDynkinDiagram { nodes: 2, edges: vec![(0, 1)], automorphism: None, rule: String::new() };
        let t = simply_laced_constants(&m, &build_asymmetry(&forward)).unwrap();
        let (a1, a2) = (m.simple_id(0), m.simple_id(1));
        assert_eq!((t.get(a1, a2), t.get(a2, a1)), (-1, 1));
    }

    #[test]
    fn non_simply_laced_orientation_rejected() {
        assert!(canonical_orientation(&big("B2"), None).is_err());
        assert!(canonical_orientation(&big("A3"), Some(vec![1, 0, 2])).is_err());
    }

    #[test]
    fn folded_c_l_values() {
        for l in 3..6 {
            let (model, table) = chevalley_constants_simple(simple(&format!("C{l}"))).unwrap();
            let e = |i: usize| {
                let mut v = vec![crate::rational::int(0); l];
                v[i] = crate::rational::int(1);
                RootVector(v)
            };
            for i in 0..l - 2 {
                let alpha = model.lookup_vector(&e(0).add(&e(i + 2))).unwrap();
                let beta = model.lookup_vector(&e(0).sub(&e(i + 2))).unwrap();
                let alpha_s = model.lookup_vector(&e(1).sub(&e(i + 2))).unwrap();
                let beta_s = model.lookup_vector(&e(1).add(&e(i + 2))).unwrap();
                assert_eq!(table.get(alpha, beta), 2);
                assert_eq!(table.get(alpha_s, alpha), -1);
                assert_eq!(table.get(beta_s, beta), 1);
            }
        }
    }

    #[test]
    fn folded_g2_reaches_three() {
        let (model, table) = chevalley_constants_simple(simple("G2")).unwrap();
        let max = (0..model.len()).flat_map(|a| (0..model.len()).map(move |b| (a, b))).map(|(a, b)| table.get(a, b).abs()).max();
        assert_eq!(max, Some(3));
    }

    #[test]
    fn f4_constants_are_one_or_two() {
        let (model, table) = chevalley_constants_simple(simple("F4")).unwrap();
        for a in 0..model.len() {
            for b in 0..model.len() {
                let c = table.get(a, b).abs();
                assert!(c <= 2);
                assert_eq!(c != 0, model.sum(a, b).is_some());
            }
        }
    }

    #[test]
    fn axioms_small_ranks() {
        for s in ["A1", "A4", "B2", "B3", "C2", "C3", "D3", "D4", "G2", "F4", "E6"] {
            let (m, t) = chevalley_constants_simple(simple(s)).unwrap();
            verify_axioms(&m, &t).unwrap_or_else(|e| panic!("{s}: {e}"));
        }
    }

    #[test]
    fn negation_flips_adjacent_brackets() {
        let (m, t) = chevalley_constants_simple(simple("A3")).unwrap();
        let g = m.simple_id(2);
        let flipped = t.with_negated(&m, &[g, m.neg(g)]);
        let changed = (0..m.len())
            .flat_map(|a| (0..m.len()).map(move |b| (a, b)))
            .filter(|&(a, b)| t.get(a, b) != flipped.get(a, b))
            .count();
        let involved = (0..m.len())
            .flat_map(|a| (0..m.len()).map(move |b| (a, b)))
            .filter(|&(a, b)| {
                m.sum(a, b).is_some_and(|s| [a, b, s].iter().filter(|&&x| x == g || x == m.neg(g)).count() % 2 == 1)
            })
            .count();
        assert_eq!(changed, involved);
        verify_axioms(&m, &flipped).unwrap();
    }

    #[test]
    fn unsupported_folding_rejected() {
        let m = big("A4");
        let d = canonical_orientation(&m, Some(vec![3, 2, 1, 0]));
        assert!(d.is_err() || fold(&m, &d.unwrap()).is_err());
    }
}
