//! Reference rows recomputed from scratch and compared exactly.

use crate::chern::s_to_chern;
use crate::divdiff::{flag_class, flag_p_polynomial, flag_top_s_number, flag_vanishing_checks, grassmann_class, grassmann_q_polynomial, FlagMethod};
use crate::error::Result;
use crate::exactalg::text::parse_cobordism;
use crate::genus::{chern_character_of_genus, cobordism_class, s_number_numeric, s_numbers, sigma_decomposition};
use crate::rootdata::{build_space, fixed_point_weights, FixedPointData};
use crate::stablex::{derived_fixed_point_data, enumerate_feasible, s_numbers_for, SignAssignment};
use crate::symmfunc::OmegaIndex;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReproduceRow {
    pub name: String,
    pub got: String,
    pub expected: String,
    pub ok: bool,
}

const M10: &str = "SU(4)/S(U(1)xU(1)xU(2))";

fn fp(d: &str, structure: &str) -> Result<FixedPointData> {
    fixed_point_weights(&build_space(d)?.with_structure(structure)?)
}

fn class(d: &str, structure: &str) -> Result<String> {
    Ok(cobordism_class(&fp(d, structure)?)?.render())
}

fn canon(p: &str) -> String {
    parse_cobordism(p).map(|c| c.render()).unwrap_or_else(|e| format!("unparsable: {e}"))
}

fn s_entry(d: &str, om: &[u32]) -> Result<String> {
    let f = fp(d, "standard")?;
    Ok(s_numbers(&f)?.get(&OmegaIndex(om.to_vec()).padded(f.dim())).map(|v| v.to_string()).unwrap_or_else(|| "0".into()))
}

fn chern_entry(d: &str, structure: &str, name: &str) -> Result<String> {
    let f = fp(d, structure)?;
    let t = s_to_chern(&s_numbers(&f)?, f.dim())?;
    Ok(t.get(name).map(|v| v.to_string()).unwrap_or_else(|| "missing".into()))
}

fn sigma(key: (u32, u32)) -> Result<String> {
    let ch = chern_character_of_genus(&fp("G2/SU(3)", "standard")?, 6)?;
    Ok(sigma_decomposition(&ch)?.get(&key).map(|c| c.render()).unwrap_or_else(|| "0".into()))
}

/// Flip the one weight through the last coordinate at every point but the
/// first; with eps = -1 this is the structure built from the Hopf bundle.
fn cp3_generator() -> Result<(Vec<i8>, String)> {
    let spec = build_space("CP3")?;
    let base = fixed_point_weights(&spec)?;
    let a = base.points.iter().map(|p| p.weights.iter().map(|w| if w[3] == 1 { -1 } else { 1 }).collect()).collect();
    let assign = SignAssignment { a, epsilon: -1 };
    let signs = derived_fixed_point_data(&spec, &assign)?.points.iter().map(|p| p.sign).collect();
    let s3 = s_numbers_for(&spec, &assign)?[&OmegaIndex(vec![0, 0, 1])].to_string();
    Ok((signs, s3))
}

fn six_sphere_non_j_zero() -> Result<String> {
    let spec = build_space("G2/SU(3)")?;
    let mut nonzero = 0;
    let mut non_j = 0;
    for t in enumerate_feasible(&spec, 1 << 6)? {
        let d = derived_fixed_point_data(&spec, &t)?;
        let is_j = t.a.iter().all(|r| r.iter().all(|&s| s == r[0])) && t.a[0][0] == t.a[1][0];
        if !is_j {
            non_j += 1;
            if !cobordism_class(&d)?.is_zero() {
                nonzero += 1;
            }
        }
    }
    Ok(format!("{non_j} non-J, {nonzero} nonzero"))
}

fn flag_suite(n: usize, name: &str) -> Result<String> {
    let r = flag_vanishing_checks(n)?;
    Ok(r.checks.iter().filter(|c| c.name.contains(name)).map(|c| if c.ok { "ok" } else { "fail" }).collect::<Vec<_>>().join(","))
}

fn all_methods_agree(n: usize) -> Result<String> {
    let a = flag_class(n, FlagMethod::CorL)?;
    let b = flag_class(n, FlagMethod::TChi)?;
    let c = flag_class(n, FlagMethod::Thm8)?;
    let loc = cobordism_class(&fp(&format!("U({n})/T{n}"), "standard")?)?;
    Ok(if a == b && b == c && c == loc { "agree".into() } else { format!("corL {a} | tchi {b} | thm8 {c} | localization {loc}") })
}

type RowFn = Box<dyn Fn() -> Result<String>>;

fn rows() -> Vec<(String, RowFn, String)> {
    let mut v: Vec<(String, RowFn, String)> = Vec::new();
    let mut push = |name: &str, f: RowFn, expected: String| v.push((name.to_string(), f, expected));
    push("CP1 class", Box::new(|| class("CP1", "standard")), canon("2*a1"));
    push("U3 class", Box::new(|| class("U(3)/T3", "standard")), "6*a1^3 + 6*a1*a2 - 6*a3".into());
    push("U3 class by L", Box::new(|| Ok(flag_class(3, FlagMethod::CorL)?.render())), "6*a1^3 + 6*a1*a2 - 6*a3".into());
    push("U3 c1^3", Box::new(|| chern_entry("U(3)/T3", "standard", "c1^3")), "48".into());
    push("U3 c1*c2", Box::new(|| chern_entry("U(3)/T3", "standard", "c1*c2")), "24".into());
    push("U3 c3", Box::new(|| chern_entry("U(3)/T3", "standard", "c3")), "6".into());
    push("G42 class", Box::new(|| class("U(4)/U(2)xU(2)", "standard")), canon("2*(3*a1^4 + 12*a1^2*a2 + 7*a2^2 + 2*a1*a3 - 10*a4)"));
    push("G42 class by L", Box::new(|| Ok(grassmann_class(2, 2)?.render())), canon("2*(3*a1^4 + 12*a1^2*a2 + 7*a2^2 + 2*a1*a3 - 10*a4)"));
    push(
        "G42 s4 at (1,2,3,4)",
        Box::new(|| Ok(s_number_numeric(&fp("U(4)/U(2)xU(2)", "standard")?, &OmegaIndex(vec![0, 0, 0, 1]), &[1, 2, 3, 4])?.to_string())),
        "-20".into(),
    );
    push("G42 c1^4", Box::new(|| chern_entry("U(4)/U(2)xU(2)", "standard", "c1^4")), "512".into());
    push("G42 c2^2", Box::new(|| chern_entry("U(4)/U(2)xU(2)", "standard", "c2^2")), "98".into());
    push("G42 Q(3,2,1,0)", Box::new(|| Ok(grassmann_q_polynomial(2, 2, &[3, 2, 1, 0])?.render())), canon("a1^4 + 4*a2^2 - 4*a1*a3"));
    for (j, c, c15) in [
        ("J1", "4*(3*a1^5 + 12*a1^3*a2 - 5*a1^2*a3 + 7*a1*a2^2 - 10*a1*a4 - 2*a2*a3 + 5*a5)", "4500"),
        ("J2", "4*(3*a1^5 + 12*a1^3*a2 - 5*a1^2*a3 + 7*a1*a2^2 - 10*a1*a4 + 8*a2*a3 - 5*a5)", "4860"),
        ("J3", "4*(3*a1^5 - 12*a1^3*a2 + 15*a1^2*a3 + 7*a1*a2^2 - 10*a1*a4 - 12*a2*a3 + 15*a5)", "-20"),
    ] {
        push(&format!("M10-{j} class"), Box::new(move || class(M10, j)), canon(c));
        push(&format!("M10-{j} c1^5"), Box::new(move || chern_entry(M10, j, "c1^5")), c15.into());
    }
    push("S6 class", Box::new(|| class("G2/SU(3)", "standard")), canon("2*(a1^3 - 3*a1*a2 + 3*a3)"));
    push("S6 sigma2", Box::new(|| sigma((1, 0))), canon("2*(a1*a2^2 - 2*a1^2*a3 - a2*a3 + 5*a1*a4 - 5*a5)"));
    push("S6 sigma2^2", Box::new(|| sigma((2, 0))), canon("2*(a1*a3^2 - 2*a1*a2*a4 - a3*a4 + 2*a1^2*a5 + 3*a2*a5 - 7*a1*a6 + 7*a7)"));
    push(
        "S6 sigma2^3",
        Box::new(|| sigma((3, 0))),
        canon("2*(-2*a1^2*a7 + 2*a1*a2*a6 - 2*a1*a3*a5 + a1*a4^2 + 9*a1*a8 - 5*a2*a7 + 3*a3*a6 - a4*a5 - 9*a9)"),
    );
    push(
        "S6 sigma3^2",
        Box::new(|| sigma((0, 2))),
        canon("2*(3*a1^2*a7 - 3*a1*a2*a6 - 3*a1*a3*a5 + 3*a1*a4^2 - 3*a1*a8 + 3*a2^2*a5 - 3*a2*a3*a4 - 3*a2*a7 + a3^3 + 6*a3*a6 - 3*a4*a5 + 3*a9)"),
    );
    push("S6-stable count", Box::new(|| Ok(enumerate_feasible(&build_space("G2/SU(3)")?, 1 << 6)?.len().to_string())), "10".into());
    push("S6 non-J classes", Box::new(six_sphere_non_j_zero), "8 non-J, 0 nonzero".into());
    push("flag s1 n=2", Box::new(|| Ok(flag_top_s_number(2)?.to_string())), "2".into());
    push("flag s3 n=3", Box::new(|| Ok(flag_top_s_number(3)?.to_string())), "-6".into());
    push("flag s6 n=4", Box::new(|| Ok(flag_top_s_number(4)?.to_string())), "0".into());
    push("flag s(1,0,0,0,1,0) n=4", Box::new(|| s_entry("U(4)/T4", &[1, 0, 0, 0, 1, 0])), "80".into());
    for n in 2..=4 {
        push(&format!("flag-even n={n}"), Box::new(move || flag_suite(n, "Chern numbers even")), "ok".into());
    }
    push("flag large-part n=4", Box::new(|| flag_suite(4, "large part")), "ok".into());
    push("flag part-sum n=4", Box::new(|| flag_suite(4, "part-sum")), "ok".into());
    push("flag P_delta n=3", Box::new(|| Ok(flag_p_polynomial(3, &[2, 1, 0])?.render())), canon("a1^3 - a1*a2 - 3*a3"));
    push("flag (23)P_delta n=3", Box::new(|| Ok(flag_p_polynomial(3, &[2, 0, 1])?.render())), canon("-(a1^3 + 5*a1*a2 + 3*a3)"));
    push("flag methods n=4", Box::new(|| all_methods_agree(4)), "agree".into());
    for n in 1..=5usize {
        push(&format!("CP{n} s_{n}"), Box::new(move || s_entry(&format!("CP{n}"), &[&vec![0; n - 1][..], &[1]].concat())), (n + 1).to_string());
    }
    push("CP3 generator signs", Box::new(|| Ok(format!("{:?}", cp3_generator()?.0))), "[-1, 1, 1, 1]".into());
    push("CP3 generator s3", Box::new(|| Ok(cp3_generator()?.1)), "-2".into());
    push("CP3 admissible count", Box::new(|| Ok(enumerate_feasible(&build_space("CP3")?, 1 << 12)?.len().to_string())), "16".into());
    v
}

/// Every row, in a fixed order.
pub fn reproduce_table() -> Vec<ReproduceRow> {
    rows()
        .into_iter()
        .map(|(name, f, expected)| {
            let got = f().unwrap_or_else(|e| format!("error: {e}"));
            ReproduceRow { ok: got == expected, name, got, expected }
        })
        .collect()
}
