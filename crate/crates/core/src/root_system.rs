//! Exact models of irreducible root systems and their orthogonal sums.
//!
//! Roots are generated from an ordered list of simple roots by closing under
//! simple reflections in simple-root (lattice) coordinates. Positive roots
//! occupy ids `0..N` sorted by height, and the negative of id `i` is `i + N`.

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{format_ratio, int, parse_rational, rat, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

/// An irreducible Cartan type such as `B3` or `E6`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleType {
    pub family: Family,
    pub rank: usize,
}

impl SimpleType {
    /// Validates the pair. `D3` is accepted and is the `A3` system written in
    /// `D` coordinates; `B1`, `C1`, `D1`, `D2` are rejected as degenerate.
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if !ok {
            let need = match family {
                Family::A => "rank >= 1",
                Family::B | Family::C => "rank >= 2",
                Family::D => "rank >= 3",
                Family::E => "rank in 6..=8",
                Family::F => "rank = 4",
                Family::G => "rank = 2",
            };
            return Err(Error::InvalidType(format!("{family:?}{rank} requires {need}")));
        }
        Ok(SimpleType { family, rank })
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(self.family, Family::A | Family::D | Family::E)
    }

    pub fn root_count(&self) -> usize {
        let l = self.rank;
        match self.family {
            Family::A => l * (l + 1),
            Family::B | Family::C => 2 * l * l,
            Family::D => 2 * l * (l - 1),
            Family::E => [72, 126, 240][l - 6],
            Family::F => 48,
            Family::G => 12,
        }
    }

    /// Ambient dimension and ordered simple roots of the standard model.
    ///
    /// `E6` uses the order in which node 3 is the branch node and node 4 the
    /// end node attached to it (Bourbaki `α1, α3, α4, α2, α5, α6`).
    pub fn standard_simple_roots(&self) -> (usize, Vec<RootVector>) {
        let l = self.rank;
        let unit = |n: usize, pairs: &[(usize, Rational)]| {
            let mut v = vec![int(0); n];
            for &(i, x) in pairs {
                v[i] = x;
            }
            RootVector(v)
        };
        let chain = |n: usize, k: usize| -> Vec<RootVector> {
            (0..k).map(|i| unit(n, &[(i, int(1)), (i + 1, int(-1))])).collect()
        };
        match self.family {
            Family::A => (l + 1, chain(l + 1, l)),
            Family::B => {
                let mut s = chain(l, l - 1);
                s.push(unit(l, &[(l - 1, int(1))]));
                (l, s)
            }
            Family::C => {
                let mut s = chain(l, l - 1);
                s.push(unit(l, &[(l - 1, int(2))]));
                (l, s)
            }
            Family::D => {
                let mut s = chain(l, l - 1);
                s.push(unit(l, &[(l - 2, int(1)), (l - 1, int(1))]));
                (l, s)
            }
            Family::E => {
                let h = rat(1, 2);
                let mut e8 = vec![RootVector(vec![h, -h, -h, -h, -h, -h, -h, h])];
                e8.push(unit(8, &[(0, int(1)), (1, int(1))]));
                for i in 0..6 {
                    e8.push(unit(8, &[(i, int(-1)), (i + 1, int(1))]));
                }
                let order: Vec<usize> = match l {
                    6 => vec![0, 2, 3, 1, 4, 5],
                    7 => (0..7).collect(),
                    _ => (0..8).collect(),
                };
                (8, order.into_iter().map(|i| e8[i].clone()).collect())
            }
            Family::F => {
                let h = rat(1, 2);
                (
                    4,
                    vec![
                        RootVector(vec![h, -h, -h, -h]),
                        unit(4, &[(3, int(1))]),
                        unit(4, &[(2, int(1)), (3, int(-1))]),
                        unit(4, &[(1, int(1)), (2, int(-1))]),
                    ],
                )
            }
            Family::G => (
                3,
                vec![
                    unit(3, &[(0, int(1)), (1, int(-1))]),
                    unit(3, &[(0, int(-2)), (1, int(1)), (2, int(1))]),
                ],
            ),
        }
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for SimpleType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(Error::InvalidType(format!("unknown family in `{s}`"))),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::InvalidType(format!("missing rank in `{s}`")))?;
        SimpleType::new(family, rank)
    }
}

/// Ordered orthogonal sum of irreducible types.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TypeLabel(pub Vec<SimpleType>);

impl TypeLabel {
    pub fn simple(t: SimpleType) -> Self {
        TypeLabel(vec![t])
    }

    pub fn rank(&self) -> usize {
        self.0.iter().map(|t| t.rank).sum()
    }

    pub fn is_simply_laced(&self) -> bool {
        self.0.iter().all(SimpleType::is_simply_laced)
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join("+"))
    }
}

impl FromStr for TypeLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s.split('+').map(str::parse).collect::<Result<Vec<_>>>()?;
        if parts.is_empty() {
            return Err(Error::InvalidType("empty type label".into()));
        }
        Ok(TypeLabel(parts))
    }
}

/// Exact coordinate vector in the ambient Euclidean space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootVector(pub Vec<Rational>);

impl RootVector {
    pub fn zero(n: usize) -> Self {
        RootVector(vec![int(0); n])
    }

    pub fn dot(&self, other: &RootVector) -> Rational {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn add(&self, other: &RootVector) -> RootVector {
        RootVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RootVector) -> RootVector {
        RootVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: Rational) -> RootVector {
        RootVector(self.0.iter().map(|a| a * k).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| *x.numer() == 0)
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|x| if *x.denom() == 1 { x.numer().to_string() } else { x.to_string() })
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for RootVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.0.iter().map(format_ratio).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RootVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(RootVector)
    }
}

/// A root with its simple-root coordinates and ambient vector.
#[derive(Clone, Debug)]
pub struct Root {
    pub lattice: Vec<i64>,
    pub vector: RootVector,
    pub norm: Rational,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.lattice.iter().sum()
    }
}

/// Ordered simple roots whose prefix sums are all roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumDecomposition {
    pub terms: Vec<usize>,
}

/// Simple-root and ambient index ranges of one irreducible summand.
#[derive(Clone, Debug)]
pub struct ComponentRange {
    pub kind: SimpleType,
    pub simple: std::ops::Range<usize>,
    pub ambient: std::ops::Range<usize>,
}

const NO_ROOT: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub struct RootSystemModel {
    label: TypeLabel,
    ambient_dim: usize,
    simple: Vec<RootVector>,
    gram: Vec<Vec<Rational>>,
    cartan: Vec<Vec<i64>>,
    roots: Vec<Root>,
    lookup: HashMap<Vec<i64>, usize>,
    sums: Vec<u32>,
    components: Vec<ComponentRange>,
}

impl RootSystemModel {
    /// Builds the standard model of `label`, with summands in separate
    /// coordinate blocks.
    pub fn build(label: &TypeLabel) -> Result<Self> {
        if label.0.is_empty() {
            return Err(Error::InvalidType("empty type label".into()));
        }
        let mut blocks = Vec::new();
        for t in &label.0 {
            blocks.push(t.standard_simple_roots());
        }
        let ambient_dim = blocks.iter().map(|b| b.0).sum();
        let mut simple = Vec::new();
        let mut components = Vec::new();
        let mut offset = 0;
        for (t, (dim, roots)) in label.0.iter().zip(blocks) {
            let start = simple.len();
            for r in roots {
                let mut v = vec![int(0); ambient_dim];
                v[offset..offset + dim].copy_from_slice(&r.0);
                simple.push(RootVector(v));
            }
            components.push(ComponentRange {
                kind: *t,
                simple: start..simple.len(),
                ambient: offset..offset + dim,
            });
            offset += dim;
        }
        let model = Self::from_parts(label.clone(), ambient_dim, simple, components)?;
        let expected: usize = label.0.iter().map(SimpleType::root_count).sum();
        if model.roots.len() != expected {
            return Err(Error::Invariant(format!(
                "{label}: generated {} roots, expected {expected}",
                model.roots.len()
            )));
        }
        Ok(model)
    }

    fn from_parts(
        label: TypeLabel,
        ambient_dim: usize,
        simple: Vec<RootVector>,
        components: Vec<ComponentRange>,
    ) -> Result<Self> {
        let l = simple.len();
        let gram: Vec<Vec<Rational>> =
            simple.iter().map(|a| simple.iter().map(|b| a.dot(b)).collect()).collect();
        let mut cartan = vec![vec![0i64; l]; l];
        for i in 0..l {
            for j in 0..l {
                let c = int(2) * gram[i][j] / gram[j][j];
                if !c.is_integer() {
                    return Err(Error::InvalidType(format!("non-integral Cartan entry ({i},{j})")));
                }
                cartan[i][j] = *c.numer();
            }
        }
        let mut positives: Vec<Vec<i64>> = Vec::new();
        let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
        let mut queue: Vec<Vec<i64>> = (0..l)
            .map(|i| {
                let mut e = vec![0; l];
                e[i] = 1;
                e
            })
            .collect();
        for q in &queue {
            seen.insert(q.clone(), ());
        }
        while let Some(k) = queue.pop() {
            if k.iter().all(|&x| x >= 0) {
                positives.push(k.clone());
            }
            for i in 0..l {
                let pairing: i64 = (0..l).map(|j| k[j] * cartan[j][i]).sum();
                let mut s = k.clone();
                s[i] -= pairing;
                if !seen.contains_key(&s) {
                    seen.insert(s.clone(), ());
                    queue.push(s);
                }
            }
        }
        if seen.len() != 2 * positives.len() {
            return Err(Error::Invariant("root set is not split by positivity".into()));
        }
        positives.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let n = positives.len();
        let mut lattices = positives.clone();
        lattices.extend(positives.iter().map(|k| k.iter().map(|x| -x).collect::<Vec<_>>()));
        let to_vec = |k: &[i64]| -> RootVector {
            let mut v = RootVector::zero(ambient_dim);
            for (i, &c) in k.iter().enumerate() {
                if c != 0 {
                    v = v.add(&simple[i].scale(int(c)));
                }
            }
            v
        };
        let roots: Vec<Root> = lattices
            .iter()
            .map(|k| {
                let vector = to_vec(k);
                let norm = vector.dot(&vector);
                Root { lattice: k.clone(), vector, norm }
            })
            .collect();
        let lookup: HashMap<Vec<i64>, usize> =
            roots.iter().enumerate().map(|(i, r)| (r.lattice.clone(), i)).collect();
        let total = 2 * n;
        let mut sums = vec![NO_ROOT; total * total];
        for a in 0..total {
            for b in 0..total {
                let s: Vec<i64> =
                    roots[a].lattice.iter().zip(&roots[b].lattice).map(|(x, y)| x + y).collect();
                if let Some(&id) = lookup.get(&s) {
                    sums[a * total + b] = id as u32;
                }
            }
        }
        Ok(RootSystemModel { label, ambient_dim, simple, gram, cartan, roots, lookup, sums, components })
    }

    pub fn label(&self) -> &TypeLabel {
        &self.label
    }

    pub fn rank(&self) -> usize {
        self.simple.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn simple_roots(&self) -> &[RootVector] {
        &self.simple
    }

    pub fn gram(&self) -> &[Vec<Rational>] {
        &self.gram
    }

    /// `cartan_matrix()[i][j] = ⟨α_i, α_j⟩ = 2(α_i, α_j)/(α_j, α_j)`.
    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn components(&self) -> &[ComponentRange] {
        &self.components
    }

    pub fn component_of_simple(&self, i: usize) -> usize {
        self.components.iter().position(|c| c.simple.contains(&i)).expect("simple index in range")
    }

    pub fn component_of_root(&self, id: usize) -> usize {
        let i = self.roots[id].lattice.iter().position(|&x| x != 0).expect("nonzero root");
        self.component_of_simple(i)
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn num_positive(&self) -> usize {
        self.roots.len() / 2
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn root(&self, id: usize) -> &Root {
        &self.roots[id]
    }

    pub fn neg(&self, id: usize) -> usize {
        let n = self.num_positive();
        if id < n {
            id + n
        } else {
            id - n
        }
    }

    pub fn is_positive(&self, id: usize) -> bool {
        id < self.num_positive()
    }

    /// Positive representative of `±id`.
    pub fn abs(&self, id: usize) -> usize {
        id % self.num_positive()
    }

    pub fn height(&self, id: usize) -> i64 {
        self.roots[id].height()
    }

    pub fn simple_id(&self, i: usize) -> usize {
        let mut e = vec![0; self.rank()];
        e[i] = 1;
        self.lookup[&e]
    }

    /// Simple index of a simple root id.
    pub fn simple_index(&self, id: usize) -> Option<usize> {
        let k = &self.roots[id].lattice;
        if k.iter().sum::<i64>() == 1 && k.iter().all(|&x| x == 0 || x == 1) {
            k.iter().position(|&x| x == 1)
        } else {
            None
        }
    }

    pub fn lookup_lattice(&self, k: &[i64]) -> Option<usize> {
        self.lookup.get(k).copied()
    }

    pub fn lookup_vector(&self, v: &RootVector) -> Option<usize> {
        self.lattice_coords(v).and_then(|k| self.lookup_lattice(&k))
    }

    /// Simple-root coordinates of `v`, when it lies in the root lattice.
    pub fn lattice_coords(&self, v: &RootVector) -> Option<Vec<i64>> {
        if v.0.len() != self.ambient_dim {
            return None;
        }
        let rhs: Vec<Rational> = self.simple.iter().map(|a| a.dot(v)).collect();
        let x = linalg::solve(&self.gram, &rhs)?;
        if !x.iter().all(|c| c.is_integer()) {
            return None;
        }
        let k: Vec<i64> = x.iter().map(|c| *c.numer()).collect();
        (self.lattice_to_vector(&k) == *v).then_some(k)
    }

    pub fn lattice_to_vector(&self, k: &[i64]) -> RootVector {
        let mut v = RootVector::zero(self.ambient_dim);
        for (i, &c) in k.iter().enumerate() {
            if c != 0 {
                v = v.add(&self.simple[i].scale(int(c)));
            }
        }
        v
    }

    pub fn inner_lattice(&self, a: &[i64], b: &[i64]) -> Rational {
        let mut s = int(0);
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y != 0 {
                    s += self.gram[i][j] * (x * y);
                }
            }
        }
        s
    }

    pub fn inner(&self, a: usize, b: usize) -> Rational {
        self.roots[a].vector.dot(&self.roots[b].vector)
    }

    /// Root id of `a + b`, if it is a root.
    pub fn sum(&self, a: usize, b: usize) -> Option<usize> {
        let s = self.sums[a * self.roots.len() + b];
        (s != NO_ROOT).then_some(s as usize)
    }

    /// `⟨β, α⟩` for a lattice element `β` and a root id `α`.
    pub fn cartan_int(&self, beta: &[i64], alpha: usize) -> i64 {
        let c = int(2) * self.inner_lattice(beta, &self.roots[alpha].lattice) / self.roots[alpha].norm;
        debug_assert!(c.is_integer());
        *c.numer()
    }

    /// `⟨β, α⟩` for ambient vectors; `α` must be a root, `β` in the root lattice.
    pub fn cartan_integer(&self, beta: &RootVector, alpha: &RootVector) -> Result<i64> {
        let a = self
            .lookup_vector(alpha)
            .ok_or_else(|| Error::Domain(format!("{alpha} is not a root")))?;
        let b = self
            .lattice_coords(beta)
            .ok_or_else(|| Error::Domain(format!("{beta} is not in the root lattice")))?;
        Ok(self.cartan_int(&b, a))
    }

    /// `(r, q)` with `β − rα, …, β + qα` the `α`-string through `β`.
    pub fn root_string_id(&self, alpha: usize, beta: usize) -> Result<(usize, usize)> {
        if alpha == beta || alpha == self.neg(beta) {
            return Err(Error::Domain("root string needs β ≠ ±α".into()));
        }
        let walk = |step: usize| {
            let mut k = 0;
            let mut cur = beta;
            while let Some(next) = self.sum(cur, step) {
                k += 1;
                cur = next;
            }
            k
        };
        let r = walk(self.neg(alpha));
        let q = walk(alpha);
        let pairing = self.cartan_int(&self.roots[beta].lattice, alpha);
        if r as i64 - q as i64 != pairing {
            return Err(Error::Invariant("r − q ≠ ⟨β, α⟩".into()));
        }
        Ok((r, q))
    }

    pub fn root_string(&self, alpha: &RootVector, beta: &RootVector) -> Result<(usize, usize)> {
        let a = self.lookup_vector(alpha).ok_or_else(|| Error::Domain(format!("{alpha} is not a root")))?;
        let b = self.lookup_vector(beta).ok_or_else(|| Error::Domain(format!("{beta} is not a root")))?;
        self.root_string_id(a, b)
    }

    /// Greedy decomposition: repeatedly strip the lowest-index simple root
    /// `α_i` with `(α, α_i) > 0` whose removal leaves a root, filling the
    /// list from the right.
    pub fn simple_sum_decomposition_id(&self, alpha: usize) -> Result<SumDecomposition> {
        if !self.is_positive(alpha) {
            return Err(Error::Domain("decomposition needs a positive root".into()));
        }
        let mut terms = Vec::new();
        let mut cur = self.roots[alpha].lattice.clone();
        loop {
            if cur.iter().sum::<i64>() == 1 {
                terms.push(cur.iter().position(|&x| x == 1).expect("simple root"));
                break;
            }
            let id = self.lookup[&cur];
            let step = (0..self.rank()).find(|&i| {
                if self.inner(id, self.simple_id(i)) <= int(0) {
                    return false;
                }
                let mut next = cur.clone();
                next[i] -= 1;
                self.lookup.contains_key(&next)
            });
            let i = step.ok_or_else(|| Error::Invariant("no admissible simple root to strip".into()))?;
            terms.push(i);
            cur[i] -= 1;
        }
        terms.reverse();
        Ok(SumDecomposition { terms })
    }

    pub fn simple_sum_decomposition(&self, alpha: &RootVector) -> Result<SumDecomposition> {
        let a = self.lookup_vector(alpha).ok_or_else(|| Error::Domain(format!("{alpha} is not a root")))?;
        self.simple_sum_decomposition_id(a)
    }

    /// Coefficients `k_γ` with `h_α = Σ k_γ h_γ` over the simple roots.
    pub fn dual_root_expansion_id(&self, alpha: usize) -> Vec<i64> {
        let r = &self.roots[alpha];
        r.lattice
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                let k = int(a) * self.gram[i][i] / r.norm;
                debug_assert!(k.is_integer());
                *k.numer()
            })
            .collect()
    }

    pub fn dual_root_expansion(&self, alpha: &RootVector) -> Result<Vec<i64>> {
        let a = self.lookup_vector(alpha).ok_or_else(|| Error::Domain(format!("{alpha} is not a root")))?;
        let k = self.dual_root_expansion_id(a);
        let r = &self.roots[a];
        for (i, (&c, &a)) in k.iter().zip(&r.lattice).enumerate() {
            if int(c) * r.norm != int(a) * self.gram[i][i] {
                return Err(Error::Invariant("dual root expansion is not integral".into()));
            }
        }
        Ok(k)
    }
}

/// Builds the standard model of an irreducible type.
pub fn build_model(family: Family, rank: usize) -> Result<RootSystemModel> {
    RootSystemModel::build(&TypeLabel::simple(SimpleType::new(family, rank)?))
}
