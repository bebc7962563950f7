use super::*;
use crate::satake::standard_forms;

fn form(name: &str, n: Option<usize>) -> RealForm {
    RealForm::from_catalog(name, n).unwrap()
}

#[test]
fn dimension_matches_complexification() {
    for f in standard_forms(6) {
        let r = form(&f.name, f.n);
        assert_eq!(r.dim(), r.model().len() + r.model().rank(), "{f}");
    }
}

#[test]
fn jacobi_and_half_integrality_across_catalog() {
    for f in standard_forms(5) {
        let r = form(&f.name, f.n);
        verify_jacobi(&r.table).unwrap_or_else(|e| panic!("{f}: {e}"));
        assert!(r.table.all_half_integral(), "{f}");
    }
}

#[test]
fn real_root_pairs_give_cartan_elements() {
    for name in ["split-G2", "AIV", "FII"] {
        let r = form(name, if name == "AIV" { Some(4) } else { None });
        let m = r.model();
        for id in 0..m.num_positive() {
            if r.ctx.class(id) != RootClass::Real {
                continue;
            }
            let i = r.symbol_index(SymbolKind::Z, id).unwrap();
            let j = r.symbol_index(SymbolKind::Z, m.neg(id)).unwrap();
            let expected = r.h1_of(id).scaled(int(-2 * r.sgn(id)));
            assert_eq!(r.table.bracket(i, j), &expected, "{name}");
        }
    }
}

#[test]
fn imaginary_pairs_give_compact_cartan() {
    let r = form("compact-B3", None);
    let m = r.model();
    for id in 0..m.num_positive() {
        let x = r.symbol_index(SymbolKind::X, id).unwrap();
        let y = r.symbol_index(SymbolKind::Y, id).unwrap();
        let h = r.table.bracket(x, y);
        assert_eq!(h, &r.h0_of(id));
        assert!(h.iter().all(|(k, _)| r.kinds[k] == SymbolKind::H0));
    }
}

#[test]
fn aiv_nilradical_is_heisenberg() {
    let r = form("AIV", Some(4));
    let m = r.model();
    let beta = (0..m.num_positive()).find(|&id| r.ctx.class(id) == RootClass::Real).unwrap();
    let z = r.symbol_index(SymbolKind::Z, beta).unwrap();
    for id in 0..m.num_positive() {
        if r.ctx.in_complex_star(id) {
            let x = r.symbol_index(SymbolKind::X, id).unwrap();
            let y = r.symbol_index(SymbolKind::Y, id).unwrap();
            let e = r.table.bracket(x, y);
            assert_eq!(e.len(), 1);
            assert!(e.get(z) == int(1) || e.get(z) == int(-1));
        }
    }
}

#[test]
fn complex_forms_carry_a_complex_structure() {
    for name in ["complex-A2", "complex-B2", "complex-G2", "complex-A3"] {
        let r = form(name, None);
        let j = r.complex_structure().unwrap();
        verify_complex_structure(&r.table, &j).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
    assert!(form("split-A2", None).complex_structure().is_none());
}

#[test]
fn iwasawa_change_is_unimodular() {
    for f in standard_forms(4) {
        let r = form(&f.name, f.n);
        let iw = iwasawa_basis(&r).unwrap();
        assert!(iw.determinant == int(1) || iw.determinant == int(-1), "{f}");
        assert!(iw.inverse_integral, "{f}");
        assert!(iw.table.all_half_integral(), "{f}");
        assert_eq!(iw.indices(IwasawaPart::A).len(), r.ctx.real_rank(), "{f}");
    }
}

#[test]
fn json_round_trip() {
    let r = form("CII", Some(2));
    let back = StructureTable::from_json(&r.table.to_json()).unwrap();
    assert_eq!(back, r.table);
    let text = serde_json::to_string(&r.table.to_json()).unwrap();
    let reparsed: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(StructureTable::from_json(&reparsed).unwrap(), r.table);
}

#[test]
fn malformed_json_is_rejected() {
    let r = form("split-A1", None);
    let mut v = r.table.to_json();
    v["brackets"][0]["i"] = serde_json::json!(99);
    assert!(StructureTable::from_json(&v).is_err());
}

#[test]
fn text_rendering_lists_brackets() {
    let r = form("split-A1", None);
    let text = r.table.render_text();
    assert_eq!(text.lines().count(), 3);
    assert!(text.contains("[H1(1,-1), Z(1,-1)] = 4 Z(1,-1)"), "{text}");
}
