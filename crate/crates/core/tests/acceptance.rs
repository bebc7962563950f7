//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use realform::chevalley::{chevalley_constants, verify_axioms};
use realform::nilpotent::{
    apply_preset, bch_multiply, compare_tables, extract_n, random_group_element, reference_table, rescale_to_bound,
    GroupElement, NilpotentAlgebra, TableMatch,
};
use realform::rational::{int, is_integer, rat, Rational};
use realform::real_algebra::{iwasawa_basis, verify_complex_structure, verify_jacobi, RealForm};
use realform::root_system::{RootSystemModel, RootVector};
use realform::satake::{standard_forms, FormClass, RootClass};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

struct Catalog {
    forms: Vec<RealForm>,
}

impl Catalog {
    fn name(f: &RealForm) -> &str {
        &f.table.provenance.form
    }

    fn nilpotents(&self) -> Vec<(String, NilpotentAlgebra)> {
        self.forms.par_iter().map(|f| (Self::name(f).to_string(), extract_n(f).unwrap())).collect()
    }
}

fn form(name: &str, n: Option<usize>) -> RealForm {
    RealForm::from_catalog(name, n).unwrap()
}

fn vector(dim: usize, coords: &[(usize, Rational)]) -> RootVector {
    let mut v = vec![int(0); dim];
    for &(i, x) in coords {
        v[i] += x;
    }
    RootVector(v)
}

fn root(f: &RealForm, coords: &[(usize, Rational)]) -> usize {
    let m = f.model();
    m.lookup_vector(&vector(m.ambient_dim(), coords)).expect("named root")
}

fn c1_jacobi(cat: &Catalog) -> Outcome {
    let triples: usize = cat
        .forms
        .iter()
        .map(|f| verify_jacobi(&f.table).map_err(|e| format!("{}: {e}", Catalog::name(f))))
        .sum::<Result<usize, String>>()?;
    Ok(format!("{} forms, {triples} triples", cat.forms.len()))
}

fn c2_half_integrality(cat: &Catalog) -> Outcome {
    for f in &cat.forms {
        ensure(f.table.all_half_integral(), || format!("{}: B-constant outside Z/2", Catalog::name(f)))?;
        let n = extract_n(f).map_err(|e| e.to_string())?;
        ensure(n.table.all_integral(), || format!("{}: N-constant outside Z", Catalog::name(f)))?;
    }
    Ok(format!("{} forms", cat.forms.len()))
}

fn c3_orthogonal() -> Outcome {
    for n in 4..=9 {
        let name = if n % 2 == 0 { "BII" } else { "DII" };
        let alg = extract_n(&form(name, Some(n))).map_err(|e| e.to_string())?;
        ensure(alg.dim() == n - 1 && alg.is_abelian(), || format!("so({n},1): dim {} abelian {}", alg.dim(), alg.is_abelian()))?;
    }
    Ok("so(n,1), n = 4..9: abelian".into())
}

fn c4_unitary() -> Outcome {
    for n in 2..=4 {
        let f = form("AIV", Some(n));
        let raw = extract_n(&f).map_err(|e| e.to_string())?;
        let p = apply_preset(&f, &raw).map_err(|e| e.to_string())?.ok_or("no preset")?;
        let reference = reference_table("heisenberg", Some(n)).map_err(|e| e.to_string())?;
        let m = compare_tables(&p.algebra.table, &reference);
        ensure(m == TableMatch::Exact, || format!("su({n},1): {m:?}"))?;
        ensure(p.algebra.dim() == 2 * n - 1 && p.algebra.center_basis.len() == 1, || format!("su({n},1): center"))?;
    }
    Ok("su(n,1), n = 2..4: exact Heisenberg, center 1".into())
}

fn c5_symplectic() -> Outcome {
    let mut notes = Vec::new();
    for n in 2..=3 {
        let f = form("CII", Some(n));
        for i in 1..n {
            let a = root(&f, &[(0, int(1)), (i + 1, int(1))]);
            let b = root(&f, &[(0, int(1)), (i + 1, int(-1))]);
            let sigma = |r| f.ctx.sigma(r);
            let got = (f.c(a, b), f.c(sigma(a), a), f.c(sigma(b), b), f.sgn(a), f.sgn(b));
            ensure(got == (2, -1, 1, 1, -1), || format!("sp({n},1), i = {i}: (c_ab, c_a^σa, c_b^σb, sgn a, sgn b) = {got:?}"))?;
        }
        let raw = extract_n(&f).map_err(|e| e.to_string())?;
        let p = apply_preset(&f, &raw).map_err(|e| e.to_string())?.ok_or("no preset")?;
        match compare_tables(&p.algebra.table, &reference_table("quaternionic", Some(n)).unwrap()) {
            TableMatch::Exact => notes.push(format!("n = {n} exact")),
            TableMatch::UpToSigns { signs } => notes.push(format!("n = {n} up to signs {signs:?}")),
            TableMatch::Mismatch { reason } => return Err(format!("sp({n},1): {reason}")),
        }
    }
    Ok(format!("raw constants as stated; {}", notes.join(", ")))
}

fn c6_exceptional() -> Outcome {
    let f = form("FII", None);
    let raw = extract_n(&f).map_err(|e| e.to_string())?;
    ensure(raw.dim() == 15 && raw.class == 2 && raw.center_basis.len() == 7, || {
        format!("dim {}, class {}, center {}", raw.dim(), raw.class, raw.center_basis.len())
    })?;
    let p = apply_preset(&f, &raw).map_err(|e| e.to_string())?.ok_or("no preset")?;
    let unit = p.algebra.table.coefficients().all(|(_, _, _, c)| c == int(1) || c == int(-1));
    ensure(unit, || "preset constants outside {-1, 0, 1}".into())?;
    let z = p.algebra.labels.iter().position(|l| l == "Z_delta").unwrap();
    for i in 0..4 {
        let e = p.algebra.table.bracket(2 * i, 2 * i + 1);
        ensure(e.len() == 1 && e.get(z) == int(1), || format!("[X_alpha{0}, Y_alpha{0}] ≠ Z_delta", i + 1))?;
    }
    let reference = reference_table("octonionic", None).unwrap();
    let m = compare_tables(&p.algebra.table, &reference);
    match m {
        TableMatch::Exact => Ok("dim 15, class 2, center 7, exact match".into()),
        TableMatch::UpToSigns { signs } => Ok(format!("dim 15, class 2, center 7, match up to signs {signs:?}")),
        TableMatch::Mismatch { reason } => Err(reason),
    }
}

fn c7_signs() -> Outcome {
    let f = form("FII", None);
    let m = f.model();
    let mut partial = RootVector::zero(m.ambient_dim());
    let mut signs = Vec::new();
    for s in m.simple_roots() {
        partial = partial.add(s);
        signs.push(f.sgn(m.lookup_vector(&partial).expect("α_i is a root")));
    }
    ensure(signs == [1, 1, -1, 1], || format!("FII sgn(α_1..α_4) = {signs:?}"))?;
    for n in 2..=4 {
        let g = form("AIV", Some(n));
        let beta = root(&g, &[(0, int(1)), (n, int(-1))]);
        ensure(g.sgn(beta) == -1, || format!("AIV({n}): sgn(β) = {}", g.sgn(beta)))?;
    }
    Ok("FII (+1, +1, -1, +1); AIV sgn(β) = -1".into())
}

fn c8_bounds(nil: &[(String, NilpotentAlgebra)]) -> Outcome {
    let mut raw_max = int(0);
    let mut bounded_max = int(0);
    for (name, n) in nil {
        let (b, _) = rescale_to_bound(n).map_err(|e| e.to_string())?;
        ensure(n.max_abs_constant() <= int(6), || format!("{name}: raw max {}", n.max_abs_constant()))?;
        ensure(b.max_abs_constant() <= int(4) && b.table.all_integral(), || format!("{name}: rescaled max {}", b.max_abs_constant()))?;
        raw_max = raw_max.max(n.max_abs_constant());
        bounded_max = bounded_max.max(b.max_abs_constant());
    }
    let g2 = extract_n(&form("split-G2", None)).unwrap();
    let (b, _) = rescale_to_bound(&g2).unwrap();
    ensure(g2.max_abs_constant() == int(6) && b.max_abs_constant() == int(3), || "split G2 bounds".into())?;
    Ok(format!("raw max {raw_max}, rescaled max {bounded_max}, split G2 6 -> 3"))
}

fn c9_iwasawa(cat: &Catalog) -> Outcome {
    cat.forms.par_iter().try_for_each(|f| {
        let iw = iwasawa_basis(f).map_err(|e| format!("{}: {e}", Catalog::name(f)))?;
        let integral = iw.elements.iter().all(|e| e.iter().all(|(_, c)| is_integer(&c)));
        ensure(
            integral && iw.inverse_integral && (iw.determinant == int(1) || iw.determinant == int(-1)),
            || format!("{}: det {}, integral {integral}, inverse integral {}", Catalog::name(f), iw.determinant, iw.inverse_integral),
        )
    })?;
    Ok(format!("{} forms, det ±1, integral both ways", cat.forms.len()))
}

fn string_depth(m: &RootSystemModel, alpha: &RootVector, beta: &RootVector) -> usize {
    let mut r = 0;
    let mut cur = beta.sub(alpha);
    while m.lookup_vector(&cur).is_some() {
        r += 1;
        cur = cur.sub(alpha);
    }
    r
}

fn c10_chevalley() -> Outcome {
    let mut types: Vec<String> = Vec::new();
    for l in 1..=8 {
        types.push(format!("A{l}"));
    }
    for l in 2..=8 {
        types.push(format!("B{l}"));
    }
    for l in 3..=8 {
        types.push(format!("C{l}"));
    }
    for l in 4..=8 {
        types.push(format!("D{l}"));
    }
    types.extend(["E6", "E7", "E8", "F4", "G2"].map(String::from));
    let pairs: usize = types
        .par_iter()
        .map(|t| {
            let m = RootSystemModel::build(&t.parse().unwrap()).map_err(|e| e.to_string())?;
            let table = chevalley_constants(&m).map_err(|e| e.to_string())?;
            verify_axioms(&m, &table).map_err(|e| format!("{t}: {e}"))?;
            let mut count = 0;
            for a in 0..m.len() {
                for b in 0..m.len() {
                    if m.sum(a, b).is_none() {
                        continue;
                    }
                    let r = string_depth(&m, &m.root(a).vector, &m.root(b).vector);
                    ensure(table.get(a, b).unsigned_abs() as usize == r + 1, || format!("{t}: |c| ≠ r + 1"))?;
                    count += 1;
                }
            }
            Ok(count)
        })
        .sum::<Result<usize, String>>()?;
    Ok(format!("{} types, {pairs} addable pairs", types.len()))
}

fn c11_classification(cat: &Catalog) -> Outcome {
    let mut complex = 0;
    for f in &cat.forms {
        let name = Catalog::name(f);
        let class = f.ctx.classify_form();
        let expected = if name.starts_with("split-") {
            Some(FormClass::Split)
        } else if name.starts_with("compact-") {
            Some(FormClass::Compact)
        } else if name.starts_with("complex-") {
            Some(FormClass::Complex)
        } else {
            None
        };
        if let Some(e) = expected {
            ensure(class == e, || format!("{name}: {class:?}"))?;
        }
        let m = f.model();
        let all = |c: RootClass| (0..m.len()).all(|id| f.ctx.class(id) == c);
        ensure((class == FormClass::Split) == all(RootClass::Real), || format!("{name}: split test"))?;
        ensure((class == FormClass::Compact) == all(RootClass::Imaginary), || format!("{name}: compact test"))?;
        ensure((class == FormClass::Complex) == all(RootClass::Complex), || format!("{name}: complex test"))?;
        if class == FormClass::Complex {
            let j = f.complex_structure().ok_or_else(|| format!("{name}: no J"))?;
            verify_complex_structure(&f.table, &j).map_err(|e| format!("{name}: {e}"))?;
            complex += 1;
        }
    }
    Ok(format!("{} forms classified, J verified on {complex} complex forms", cat.forms.len()))
}

fn c12_group_law(nil: &[(String, NilpotentAlgebra)]) -> Outcome {
    const TRIPLES: usize = 100;
    let max_class = nil.iter().map(|(_, n)| n.class).max().unwrap_or(0);
    ensure(nil.iter().any(|(name, n)| name == "split-F4" && n.class >= 3), || "split F4 missing".into())?;
    nil.par_iter().filter(|(_, n)| n.dim() > 0).try_for_each(|(name, n)| {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let e = GroupElement::identity(n.dim());
        for _ in 0..TRIPLES {
            let [x, y, z] = [(); 3].map(|_| random_group_element(n.dim(), &mut rng));
            let mul = |a: &GroupElement, b: &GroupElement| bch_multiply(n, a, b).unwrap();
            ensure(mul(&mul(&x, &y), &z) == mul(&x, &mul(&y, &z)), || format!("{name}: associativity"))?;
            ensure(mul(&x, &x.inverse()) == e && mul(&x.inverse(), &x) == e, || format!("{name}: inverse"))?;
            ensure(mul(&x, &e) == x && mul(&e, &x) == x, || format!("{name}: identity"))?;
        }
        Ok::<(), String>(())
    })?;
    let count = nil.iter().filter(|(_, n)| n.dim() > 0).count();
    Ok(format!("{TRIPLES} triples on each of {count} algebras, class up to {max_class}"))
}

fn c13_restricted() -> Outcome {
    for (name, n, label) in [
        ("AIV", Some(3), "BC1"),
        ("CII", Some(2), "BC1"),
        ("FII", None, "BC1"),
        ("BII", Some(6), "A1"),
        ("DII", Some(7), "A1"),
    ] {
        let t = form(name, n).ctx.restricted_system().type_label;
        ensure(t == label, || format!("{name}: {t}"))?;
    }
    for n in 1..=4 {
        let f = form("CII", Some(n));
        let m = f.model();
        let delta = vector(m.ambient_dim(), &[(0, int(1)), (1, int(1))]);
        let (mut half, mut full) = (0, 0);
        for id in 0..m.num_positive() {
            let ratio = m.root(id).vector.dot(&delta) / delta.dot(&delta);
            if ratio == rat(1, 2) {
                half += 1;
            } else if ratio == int(1) {
                full += 1;
            }
        }
        let rs = f.ctx.restricted_system();
        let got = (rs.multiplicity(&delta.scale(rat(1, 2))), rs.multiplicity(&delta));
        ensure(got == (half, full) && got == (4 * (n - 1), 3), || format!("sp({n},1): {got:?} vs count ({half}, {full})"))?;
    }
    Ok("BC1 / A1 as expected; sp(n,1) multiplicities (4(n-1), 3) for n = 1..4".into())
}

fn main() {
    let start = Instant::now();
    let cat = Catalog {
        forms: standard_forms(6).par_iter().map(|s| RealForm::from_catalog(&s.name, s.n).unwrap()).collect(),
    };
    let nil = cat.nilpotents();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("Jacobi identity on every catalog form of rank <= 6", Box::new(|| c1_jacobi(&cat))),
        ("B-constants in Z/2, N-constants in Z", Box::new(|| c2_half_integrality(&cat))),
        ("so(n,1) nilradicals abelian", Box::new(c3_orthogonal)),
        ("su(n,1) Heisenberg table", Box::new(c4_unitary)),
        ("sp(n,1) table and raw constants", Box::new(c5_symplectic)),
        ("f4(-20) nilradical and table", Box::new(c6_exceptional)),
        ("sgn values of the rank-one examples", Box::new(c7_signs)),
        ("structure-constant bounds", Box::new(|| c8_bounds(&nil))),
        ("Iwasawa change of basis unimodular", Box::new(|| c9_iwasawa(&cat))),
        ("Chevalley axioms, ranks <= 8", Box::new(c10_chevalley)),
        ("split/compact/complex classification and J", Box::new(|| c11_classification(&cat))),
        ("BCH group law", Box::new(|| c12_group_law(&nil))),
        ("restricted root systems", Box::new(c13_restricted)),
    ];
    let mut failures = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panic: {}", msg.unwrap_or_default()))
        });
        let secs = t.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {:>2} {title}: {detail} [{secs:.1}s]", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL {:>2} {title}: {detail} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed in {:.1}s", criteria.len() - failures, criteria.len(), start.elapsed().as_secs_f64());
    if failures > 0 {
        std::process::exit(1);
    }
}
