//! Property tests for the invariants each module promises.

use std::sync::OnceLock;

use proptest::prelude::*;
use proptest::sample::{select, Index};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use realform::adaptation::{verify_sgn, verify_sigma_theta_symmetry};
use realform::chevalley::{build_asymmetry, canonical_orientation, chevalley_constants, verify_axioms};
use realform::linalg;
use realform::nilpotent::{
    bch_multiply, extract_n, random_group_element, GroupElement, NilpotentAlgebra,
};
use realform::rational::{int, is_integer, Rational};
use realform::real_algebra::{RealForm, StructureTable, SymbolKind};
use realform::root_system::{RootSystemModel, RootVector};
use realform::satake::{standard_forms, FormClass, RootClass};

fn type_names(max_rank: usize) -> Vec<String> {
    let mut out = Vec::new();
    for l in 1..=max_rank {
        out.push(format!("A{l}"));
    }
    for l in 2..=max_rank {
        out.push(format!("B{l}"));
    }
    for l in 3..=max_rank {
        out.push(format!("C{l}"));
    }
    for l in 4..=max_rank {
        out.push(format!("D{l}"));
    }
    out.extend(["E6", "E7", "E8", "F4", "G2"].map(String::from));
    out
}

fn model(name: &str) -> RootSystemModel {
    RootSystemModel::build(&name.parse().unwrap()).unwrap()
}

fn forms() -> &'static Vec<RealForm> {
    static FORMS: OnceLock<Vec<RealForm>> = OnceLock::new();
    FORMS.get_or_init(|| {
        standard_forms(6).iter().map(|s| RealForm::from_catalog(&s.name, s.n).unwrap()).collect()
    })
}

fn nilpotents() -> &'static Vec<(String, NilpotentAlgebra)> {
    static N: OnceLock<Vec<(String, NilpotentAlgebra)>> = OnceLock::new();
    N.get_or_init(|| {
        forms()
            .iter()
            .map(|f| (f.table.provenance.form.clone(), extract_n(f).unwrap()))
            .filter(|(_, n)| n.dim() > 0)
            .collect()
    })
}

/// `⟨β, α⟩ = 2(β, α)/(α, α)` straight from ambient vectors.
fn pairing(beta: &RootVector, alpha: &RootVector) -> i64 {
    let c = int(2) * beta.dot(alpha) / alpha.dot(alpha);
    assert!(c.is_integer());
    c.to_integer()
}

/// `(r, q)` by walking ambient vectors.
fn string_by_vectors(m: &RootSystemModel, alpha: &RootVector, beta: &RootVector) -> (usize, usize) {
    let walk = |step: &RootVector| {
        let mut k = 0;
        let mut cur = beta.add(step);
        while m.lookup_vector(&cur).is_some() {
            k += 1;
            cur = cur.add(step);
        }
        k
    };
    (walk(&alpha.scale(int(-1))), walk(alpha))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reflections_permute_roots(name in select(type_names(8))) {
        let m = model(&name);
        for a in m.roots() {
            for b in m.roots() {
                let image = b.vector.sub(&a.vector.scale(int(pairing(&b.vector, &a.vector))));
                prop_assert!(m.lookup_vector(&image).is_some(), "{name}: s_α(β) is not a root");
            }
        }
    }

    #[test]
    fn root_strings_match_pairings(name in select(type_names(8)), i in any::<Index>(), j in any::<Index>()) {
        let m = model(&name);
        let (a, b) = (i.index(m.len()), j.index(m.len()));
        prop_assume!(a != b && a != m.neg(b));
        let (alpha, beta) = (&m.root(a).vector, &m.root(b).vector);
        let (r, q) = string_by_vectors(&m, alpha, beta);
        prop_assert_eq!(r as i64 - q as i64, pairing(beta, alpha));
        prop_assert_eq!(m.root_string(alpha, beta).unwrap(), (r, q));
        prop_assert_eq!(m.cartan_integer(beta, alpha).unwrap(), pairing(beta, alpha));
    }

    #[test]
    fn decompositions_have_root_prefixes(name in select(type_names(8))) {
        let m = model(&name);
        for id in 0..m.num_positive() {
            let d = m.simple_sum_decomposition_id(id).unwrap();
            let mut prefix = RootVector::zero(m.ambient_dim());
            for &i in &d.terms {
                prefix = prefix.add(&m.simple_roots()[i]);
                prop_assert!(m.lookup_vector(&prefix).is_some(), "{name}: prefix is not a root");
            }
            prop_assert_eq!(&prefix, &m.root(id).vector);
        }
    }

    #[test]
    fn dual_expansions_are_integral_with_uniform_sign(name in select(type_names(8))) {
        let m = model(&name);
        for r in m.roots() {
            let k = m.dual_root_expansion(&r.vector).unwrap();
            prop_assert!(k.iter().all(|&x| x >= 0) || k.iter().all(|&x| x <= 0));
            // h_α = 2α/(α,α) on the ambient side.
            let mut lhs = RootVector::zero(m.ambient_dim());
            for (i, &c) in k.iter().enumerate() {
                let s = &m.simple_roots()[i];
                lhs = lhs.add(&s.scale(int(2 * c) / s.dot(s)));
            }
            prop_assert_eq!(lhs, r.vector.scale(int(2) / r.vector.dot(&r.vector)));
        }
    }

    #[test]
    fn chevalley_axioms_hold(name in select(type_names(8))) {
        let m = model(&name);
        let t = chevalley_constants(&m).unwrap();
        prop_assert!(verify_axioms(&m, &t).is_ok());
        for a in 0..m.len() {
            for b in 0..m.len() {
                if m.sum(a, b).is_some() {
                    let (r, _) = string_by_vectors(&m, &m.root(a).vector, &m.root(b).vector);
                    prop_assert_eq!(t.get(a, b).unsigned_abs() as usize, r + 1);
                }
            }
        }
    }

    #[test]
    fn asymmetry_satisfies_defining_equations(
        name in select(vec!["A3", "A6", "D5", "E6", "E7", "E8"]),
        a in prop::collection::vec(-2i64..=2, 8),
        b in prop::collection::vec(-2i64..=2, 8),
        c in prop::collection::vec(-2i64..=2, 8),
    ) {
        let m = model(name);
        let l = m.rank();
        let (a, b, c) = (&a[..l], &b[..l], &c[..l]);
        let eps = build_asymmetry(&canonical_orientation(&m, None).unwrap());
        let parity = |x: Rational| if (x.to_integer()).rem_euclid(2) == 0 { 1 } else { -1 };
        prop_assert_eq!(eps.eval(a, b) * eps.eval(b, a), parity(m.inner_lattice(a, b)));
        prop_assert_eq!(eps.eval(a, a), parity(m.inner_lattice(a, a) / int(2)));
        let ac: Vec<i64> = a.iter().zip(c).map(|(x, y)| x + y).collect();
        prop_assert_eq!(eps.eval(&ac, b), eps.eval(a, b) * eps.eval(c, b));
        prop_assert_eq!(eps.eval(b, &ac), eps.eval(b, a) * eps.eval(b, c));
    }

    #[test]
    fn theta_is_an_involutive_isometry(i in any::<Index>()) {
        let f = &forms()[i.index(forms().len())];
        let ctx = &f.ctx;
        let m = f.model();
        let dim = m.ambient_dim();
        prop_assert_eq!(linalg::mat_mul(&ctx.theta, &ctx.theta), linalg::identity::<Rational>(dim));
        let image = |v: &RootVector| RootVector(linalg::mat_vec(&ctx.theta, &v.0));
        for v in m.simple_roots() {
            for w in m.simple_roots() {
                prop_assert_eq!(image(v).dot(&image(w)), v.dot(w));
            }
        }
    }

    #[test]
    fn sigma_never_differs_by_a_root(i in any::<Index>()) {
        let f = &forms()[i.index(forms().len())];
        let m = f.model();
        for id in 0..m.len() {
            let diff = m.root(id).vector.sub(&m.root(f.ctx.sigma(id)).vector);
            prop_assert!(m.lookup_vector(&diff).is_none());
        }
    }

    #[test]
    fn shading_is_the_simple_imaginary_set(i in any::<Index>()) {
        let f = &forms()[i.index(forms().len())];
        let m = f.model();
        for s in 0..m.rank() {
            prop_assert_eq!(f.ctx.class(m.simple_id(s)) == RootClass::Imaginary, f.ctx.is_shaded(s));
        }
    }

    #[test]
    fn multiplicities_count_sigma(i in any::<Index>()) {
        let f = &forms()[i.index(forms().len())];
        let rs = f.ctx.restricted_system();
        prop_assert_eq!(rs.multiplicities.iter().sum::<usize>(), f.ctx.sigma_set().len());
    }

    #[test]
    fn signs_satisfy_recursion(i in any::<Index>()) {
        let f = &forms()[i.index(forms().len())];
        prop_assert!(verify_sgn(&f.ctx, &f.adapted.table, &f.adapted.sgn).is_ok());
        prop_assert!(verify_sigma_theta_symmetry(&f.ctx, &f.adapted.table));
        if matches!(f.ctx.classify_form(), FormClass::Split | FormClass::Compact) {
            prop_assert!((0..f.model().len()).all(|id| f.sgn(id) == 1));
        }
    }

    #[test]
    fn only_compact_cartan_targets_carry_halves(i in any::<Index>()) {
        let f = &forms()[i.index(forms().len())];
        for (_, _, k, c) in f.table.coefficients() {
            prop_assert!(is_integer(&(c * int(2))));
            if !is_integer(&c) {
                prop_assert_eq!(f.kinds[k], SymbolKind::H0);
            }
        }
    }

    #[test]
    fn table_json_round_trips(i in any::<Index>()) {
        let f = &forms()[i.index(forms().len())];
        let back = StructureTable::from_json(&f.table.to_json()).unwrap();
        prop_assert_eq!(back.basis.clone(), f.table.basis.clone());
        for a in 0..f.dim() {
            for b in 0..f.dim() {
                prop_assert_eq!(back.bracket(a, b), f.table.bracket(a, b));
            }
        }
    }

    #[test]
    fn group_element_json_round_trips(seed in any::<u64>(), dim in 0usize..20) {
        let g = random_group_element(dim, &mut ChaCha8Rng::seed_from_u64(seed));
        let back: GroupElement = serde_json::from_str(&serde_json::to_string(&g).unwrap()).unwrap();
        prop_assert_eq!(back, g);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    /// One random triple per catalog algebra per case.
    #[test]
    fn group_law_is_associative(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for (name, n) in nilpotents() {
            let x = random_group_element(n.dim(), &mut rng);
            let y = random_group_element(n.dim(), &mut rng);
            let z = random_group_element(n.dim(), &mut rng);
            let left = bch_multiply(n, &bch_multiply(n, &x, &y).unwrap(), &z).unwrap();
            let right = bch_multiply(n, &x, &bch_multiply(n, &y, &z).unwrap()).unwrap();
            prop_assert_eq!(left, right, "{}", name);
            let e = GroupElement::identity(n.dim());
            prop_assert_eq!(bch_multiply(n, &x, &x.inverse()).unwrap(), e.clone(), "{}", name);
            prop_assert_eq!(bch_multiply(n, &x, &e).unwrap(), x, "{}", name);
        }
    }
}

#[test]
fn split_tables_are_doubled_chevalley_tables() {
    for f in forms().iter().filter(|f| f.ctx.classify_form() == FormClass::Split) {
        let m = f.model();
        for a in 0..m.len() {
            let za = f.z_of(a);
            for b in 0..m.len() {
                let got = f.table.bracket_elements(&za, &f.z_of(b));
                if b == m.neg(a) {
                    assert_eq!(got, f.h1_of(a).scaled(int(-2)));
                } else if let Some(s) = m.sum(a, b) {
                    assert_eq!(got, f.z_of(s).scaled(int(2 * f.c(a, b))));
                } else {
                    assert!(got.is_zero());
                }
            }
        }
    }
}

#[test]
fn compact_tables_pair_x_and_y_into_cartan() {
    for f in forms().iter().filter(|f| f.ctx.classify_form() == FormClass::Compact) {
        let m = f.model();
        for a in 0..m.num_positive() {
            assert_eq!(f.table.bracket_elements(&f.x_of(a), &f.y_of(a)), f.h0_of(a));
        }
    }
}

#[test]
fn nilpotent_constants_are_integral_and_graded() {
    for (name, n) in nilpotents() {
        assert!(n.table.all_integral(), "{name}");
        assert!(n.grading_respected(), "{name}");
        assert!(n.max_abs_constant() <= int(6), "{name}");
    }
}

#[test]
fn rank_one_algebras_are_at_most_two_step() {
    for f in forms().iter().filter(|f| f.ctx.real_rank() == 1) {
        let n = extract_n(f).unwrap();
        assert!(n.class <= 2, "{}", f.table.provenance.form);
    }
}

#[test]
fn compact_forms_have_zero_nilradical() {
    for f in forms().iter().filter(|f| f.ctx.classify_form() == FormClass::Compact) {
        let n = extract_n(f).unwrap();
        assert_eq!(n.dim(), 0);
        assert!(n.center_basis.is_empty());
    }
}
