//! Classes, characteristic numbers and Chern tables of the example spaces,
//! computed by localization and, where available, by the L-operator formulas.

use num_bigint::BigInt;
use torigen::chern::s_to_chern;
use torigen::divdiff::{flag_class, flag_vanishing_checks, grassmann_class, FlagMethod};
use torigen::exactalg::text::parse_cobordism;
use torigen::exactalg::CobordismPoly;
use torigen::genus::{chern_character_of_genus, cobordism_class, s_numbers, sigma_decomposition};
use torigen::rootdata::{build_space, fixed_point_weights, FixedPointData};
use torigen::symmfunc::OmegaIndex;

fn data(d: &str, structure: &str) -> FixedPointData {
    fixed_point_weights(&build_space(d).unwrap().with_structure(structure).unwrap()).unwrap()
}

fn poly(s: &str) -> CobordismPoly {
    parse_cobordism(s).unwrap()
}

fn chern(fp: &FixedPointData) -> Vec<(String, BigInt)> {
    s_to_chern(&s_numbers(fp).unwrap(), fp.dim()).unwrap().entries()
}

fn expect_chern(fp: &FixedPointData, expected: &[(&str, i64)]) {
    let got = chern(fp);
    for (name, v) in expected {
        let found = got.iter().find(|(k, _)| k == name).unwrap_or_else(|| panic!("no {name}"));
        assert_eq!(found.1, BigInt::from(*v), "{name}");
    }
}

const M10: &str = "SU(4)/S(U(1)xU(1)xU(2))";

#[test]
fn grassmannian_g42() {
    let fp = data("U(4)/U(2)xU(2)", "standard");
    let class = cobordism_class(&fp).unwrap();
    assert_eq!(class, poly("2*(3*a1^4 + 12*a1^2*a2 + 7*a2^2 + 2*a1*a3 - 10*a4)"));
    assert_eq!(grassmann_class(2, 2).unwrap(), class);
    let s = s_numbers(&fp).unwrap();
    let pick = |o: &[u32]| s[&OmegaIndex(o.to_vec())].to_string();
    assert_eq!(
        [pick(&[4, 0, 0, 0]), pick(&[2, 1, 0, 0]), pick(&[0, 2, 0, 0]), pick(&[1, 0, 1, 0]), pick(&[0, 0, 0, 1])],
        ["6", "24", "14", "4", "-20"]
    );
    expect_chern(&fp, &[("c4", 6), ("c1*c3", 48), ("c2^2", 98), ("c1^2*c2", 224), ("c1^4", 512)]);
}

#[test]
fn grassmann_routes_agree() {
    for (q, l) in [(2, 1), (3, 1), (2, 2)] {
        let fp = data(&format!("U({})/U({q})xU({l})", q + l), "standard");
        assert_eq!(grassmann_class(q, l).unwrap(), cobordism_class(&fp).unwrap(), "({q},{l})");
    }
}

#[test]
fn m10_structures() {
    let classes = [
        ("J1", "4*(3*a1^5 + 12*a1^3*a2 - 5*a1^2*a3 + 7*a1*a2^2 - 10*a1*a4 - 2*a2*a3 + 5*a5)"),
        ("J2", "4*(3*a1^5 + 12*a1^3*a2 - 5*a1^2*a3 + 7*a1*a2^2 - 10*a1*a4 + 8*a2*a3 - 5*a5)"),
        ("J3", "4*(3*a1^5 - 12*a1^3*a2 + 15*a1^2*a3 + 7*a1*a2^2 - 10*a1*a4 - 12*a2*a3 + 15*a5)"),
    ];
    for (j, c) in classes {
        let fp = data(M10, j);
        assert_eq!(fp.points.len(), 12);
        assert_eq!(cobordism_class(&fp).unwrap(), poly(c), "{j}");
    }
    expect_chern(&data(M10, "J1"), &[("c5", 12), ("c1*c4", 108), ("c2*c3", 292), ("c1^2*c3", 612), ("c1*c2^2", 1028), ("c1^3*c2", 2148), ("c1^5", 4500)]);
    expect_chern(&data(M10, "J2"), &[("c5", 12), ("c1*c4", 108), ("c2*c3", 292), ("c1^2*c3", 612), ("c1*c2^2", 1068), ("c1^3*c2", 2268), ("c1^5", 4860)]);
    expect_chern(&data(M10, "J3"), &[("c5", 12), ("c1*c4", 12), ("c2*c3", 4), ("c1^2*c3", 20), ("c1*c2^2", -4), ("c1^3*c2", -4), ("c1^5", -20)]);
}

#[test]
fn six_sphere_series() {
    let fp = data("G2/SU(3)", "standard");
    let ch = chern_character_of_genus(&fp, 6).unwrap();
    let d = sigma_decomposition(&ch).unwrap();
    assert_eq!(d[&(0, 0)], poly("2*(a1^3 - 3*a1*a2 + 3*a3)"));
    assert_eq!(d[&(1, 0)], poly("2*(a1*a2^2 - 2*a1^2*a3 - a2*a3 + 5*a1*a4 - 5*a5)"));
    assert_eq!(d[&(2, 0)], poly("2*(a1*a3^2 - 2*a1*a2*a4 - a3*a4 + 2*a1^2*a5 + 3*a2*a5 - 7*a1*a6 + 7*a7)"));
    assert_eq!(d[&(3, 0)], poly("2*(-2*a1^2*a7 + 2*a1*a2*a6 - 2*a1*a3*a5 + a1*a4^2 + 9*a1*a8 - 5*a2*a7 + 3*a3*a6 - a4*a5 - 9*a9)"));
    assert_eq!(
        d[&(0, 2)],
        poly("2*(3*a1^2*a7 - 3*a1*a2*a6 - 3*a1*a3*a5 + 3*a1*a4^2 - 3*a1*a8 + 3*a2^2*a5 - 3*a2*a3*a4 - 3*a2*a7 + a3^3 + 6*a3*a6 - 3*a4*a5 + 3*a9)")
    );
    // odd total degree parts vanish
    for (k, v) in &d {
        if (2 * k.0 + 3 * k.1) % 2 == 1 {
            assert!(v.is_zero(), "{k:?}");
        }
    }
}

#[test]
fn flag_four_three_ways() {
    let expect = poly("8*(3*a1^6 + 12*a1^4*a2 - 12*a1^3*a3 + 7*a1^2*a2^2 - 10*a1^2*a4 - 4*a1*a2*a3 + 10*a1*a5 - 3*a3^2)");
    for m in [FlagMethod::CorL, FlagMethod::TChi, FlagMethod::Thm8] {
        assert_eq!(flag_class(4, m).unwrap(), expect, "{m:?}");
    }
    let fp = data("U(4)/T4", "standard");
    assert_eq!(cobordism_class(&fp).unwrap(), expect);
    assert_eq!(expect.coeff(&OmegaIndex(vec![1, 0, 0, 0, 1, 0]).monomial()), torigen::exactalg::rat(80));
}

#[test]
fn flag_routes_agree_small() {
    for n in 2..=3 {
        let fp = data(&format!("U({n})/T{n}"), "standard");
        assert_eq!(flag_class(n, FlagMethod::CorL).unwrap(), cobordism_class(&fp).unwrap());
        assert_eq!(flag_class(n, FlagMethod::TChi).unwrap(), cobordism_class(&fp).unwrap());
    }
}

#[test]
fn flag_vanishing_suites() {
    for n in 2..=5 {
        let r = flag_vanishing_checks(n).unwrap();
        assert!(r.ok(), "{r:?}");
    }
}

#[test]
fn projective_spaces() {
    assert_eq!(cobordism_class(&data("CP3", "standard")).unwrap(), poly("4*(a1^3 + 3*a1*a2 + a3)"));
    for n in 1..=5usize {
        let fp = data(&format!("CP{n}"), "standard");
        let s = s_numbers(&fp).unwrap();
        let mut top = vec![0; n];
        top[n - 1] = 1;
        assert_eq!(s[&OmegaIndex(top)], BigInt::from(n as i64 + 1), "CP{n}");
    }
}
