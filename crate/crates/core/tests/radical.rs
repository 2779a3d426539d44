mod common;

use common::*;
use nilindex_core::radical::{method_vertex_set, nilpotency_index, Method};
use nilindex_core::Error;

#[test]
fn fixture_indices() {
    for (name, nodes, r_a) in [
        ("a2", 3, 2),
        ("a3", 6, 3),
        ("a3_zero", 5, 3),
        ("d4", 12, 5),
        ("loop", 3, 5),
        ("single_vertex", 1, 1),
        ("commutative_square", 11, 5),
        ("cyclic", 24, 15),
        ("four_cycle", 30, 17),
        ("toupie_one_zero", 44, 18),
        ("toupie_two_zero", 27, 9),
    ] {
        let f = filtration(name);
        assert_eq!(f.len(), nodes, "{name}");
        assert_eq!(f.nilpotency_index(), r_a, "{name}");
    }
}

#[test]
fn vertex_values() {
    let cases: [(&str, &[usize]); 3] = [
        ("four_cycle", &[16, 12, 16, 8]),
        ("toupie_one_zero", &[9, 17, 17, 9, 12, 12]),
        ("toupie_two_zero", &[6, 7, 7, 6, 8, 8]),
    ];
    for (name, rs) in cases {
        let f = filtration(name);
        let got: Vec<usize> = (0..rs.len()).map(|a| f.canonical_r(a).unwrap()).collect();
        assert_eq!(got, rs, "{name}");
    }
}

// A_n linear without relations: the longest radical path is P_n -> ... -> I_1 of length n - 1.
#[test]
fn linear_a_n() {
    for n in 2..=5 {
        let mut text = String::new();
        for v in 1..=n {
            text.push_str(&format!("vertex {v}\n"));
        }
        for v in 1..n {
            text.push_str(&format!("arrow a{v} {v} {}\n", v + 1));
        }
        let f = filtration_of(&algebra_from(&text).unwrap()).unwrap();
        assert_eq!(f.len(), n * (n + 1) / 2);
        assert_eq!(f.nilpotency_index(), n);
    }
}

// k[x]/(x^m): Hom(k[x]/x^i, k[x]/x^j) has a basis of maps of every length up to m - 1 along a path
// through the uniserials, so R^{2m-1} = 0 and R^{2m-2} != 0.
#[test]
fn truncated_polynomial() {
    for m in 2..=4 {
        let rel = vec!["x"; m].join("*");
        let f = filtration_of(&algebra_from(&format!("vertex 1\narrow x 1 1\nrelation {rel}\n")).unwrap()).unwrap();
        assert_eq!(f.len(), m);
        assert_eq!(f.nilpotency_index(), 2 * m - 1);
    }
}

#[test]
fn auto_resolution() {
    for (name, tag) in [
        ("cyclic", "auto:one-per-relation"),
        ("toupie_one_zero", "auto:toupie"),
        ("four_cycle", "auto:zero-relations"),
        ("ten_vertex", "auto:v-set"),
        ("a2", "auto:direct"),
    ] {
        let f = filtration(name);
        let rep = nilpotency_index(&f, Method::Auto, true).unwrap();
        assert_eq!(rep.method, tag, "{name}");
        assert_eq!(rep.r_a, f.nilpotency_index(), "{name}");
    }
}

#[test]
fn gates() {
    let pres = |name: &str| algebra(name).presentation().clone();
    assert!(matches!(method_vertex_set(&pres("a2"), Method::VSet), Err(Error::MethodInapplicable(_))));
    assert!(matches!(method_vertex_set(&pres("ten_vertex"), Method::ZeroRelations), Err(Error::MethodInapplicable(_))));
    assert!(matches!(method_vertex_set(&pres("four_cycle"), Method::OnePerRelation), Err(Error::MethodInapplicable(_))));
    assert!(matches!(method_vertex_set(&pres("toupie_two_zero"), Method::Toupie), Err(Error::MethodInapplicable(_))));
    let (m, vs, notes) = method_vertex_set(&pres("a3"), Method::ZeroRelations).unwrap();
    assert_eq!((m, vs.len()), (Method::VSet, 1));
    assert_eq!(notes.len(), 1);
}

#[test]
fn layers_shrink() {
    let f = filtration("four_cycle");
    for x in 0..f.len() {
        for y in 0..f.len() {
            for n in 0..f.nilpotency_index() {
                assert!(f.layer(n, x, y).contains(&f.layer(n + 1, x, y)).unwrap());
            }
            assert_eq!(f.layer_dim(f.nilpotency_index(), x, y), 0);
        }
    }
}

#[test]
fn strategies_agree_on_fixtures() {
    for name in ["cyclic", "four_cycle", "toupie_two_zero", "commutative_square", "loop"] {
        strategies_agree(&filtration(name)).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn composition_oracle_on_small_fixtures() {
    for name in ["a2", "a3", "a3_zero", "d4", "loop", "single_vertex", "commutative_square"] {
        brute_force_oracle(&filtration(name)).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn ten_vertex_values() {
    let f = filtration("ten_vertex");
    let want = [23, 27, 23, 26, 26, 24, 1, 26, 27, 1];
    for (k, w) in want.iter().enumerate() {
        assert_eq!(r(&f, &(k + 1).to_string()), *w, "r_{}", k + 1);
    }
}
