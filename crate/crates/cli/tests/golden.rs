//! Golden outputs of the `compactify` binary for the worked examples, plus the
//! value each example is about, checked directly on the JSON.
//!
//! Set `COMPACTIFY_BLESS=1` to rewrite the files under `tests/golden/`.

use std::path::PathBuf;
use std::process::Command;

use serde_json::{json, Value};

fn run(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_compactify"))
        .args(args)
        .env_remove("COMPACTIFY_MAX_CANDIDATES")
        .output()
        .expect("binary runs");
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{args:?}: invalid JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    });
    (out.status.code().unwrap_or(-1), v)
}

fn canonical(v: &Value) -> String {
    // serde_json maps are ordered by key, so this is a canonical form
    serde_json::to_string(v).unwrap()
}

fn golden(name: &str, args: &[&str]) -> Value {
    let (code, v) = run(args);
    assert_eq!(code, 0, "{args:?} exited with {code}: {v}");
    assert_eq!(v["schema"], "compactify/1");
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.json"));
    if std::env::var_os("COMPACTIFY_BLESS").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        let doc = json!({ "args": args, "output": v });
        std::fs::write(&path, serde_json::to_string_pretty(&doc).unwrap() + "\n").unwrap();
    } else {
        let text = std::fs::read_to_string(&path)
            .unwrap_or_else(|e| panic!("missing golden {}: {e}", path.display()));
        let doc: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(doc["args"], json!(args), "{name}: golden was recorded for other arguments");
        assert_eq!(canonical(&doc["output"]), canonical(&v), "{name}: output changed");
    }
    v
}

/// `;`-joined weights of a JSON array, as accepted by `--pi` and `--set`.
fn weight_list(v: &Value) -> String {
    v.as_array()
        .unwrap()
        .iter()
        .map(weight_text)
        .collect::<Vec<_>>()
        .join(";")
}

fn weight_text(w: &Value) -> String {
    w.as_array()
        .unwrap()
        .iter()
        .map(|x| match x {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        })
        .collect::<Vec<_>>()
        .join(",")
}

fn set_of(v: &Value) -> Vec<String> {
    let mut s: Vec<String> = v.as_array().unwrap().iter().map(weight_text).collect();
    s.sort();
    s
}

fn expect_set(v: &Value, expected: &[&str]) {
    let mut e: Vec<String> = expected.iter().map(|s| s.to_string()).collect();
    e.sort();
    assert_eq!(set_of(v), e);
}

#[test]
fn highest_short_roots() {
    let b4 = golden("info_b4", &["info", "B4:sc"]);
    assert_eq!(b4["components"][0]["highest_short_root"], json!([1, 1, 1, 1]));
    let g2 = golden("info_g2", &["info", "G2:sc"]);
    assert_eq!(g2["components"][0]["highest_short_root"], json!([2, 1]));
    let c4 = golden("info_c4", &["info", "C4:sc"]);
    assert_eq!(c4["components"][0]["highest_short_root"], json!([1, 2, 2, 1]));
}

#[test]
fn info_adjoint_a2() {
    let v = golden("info_a2_ad", &["info", "A2:ad"]);
    assert_eq!(v["cartan_matrix"], json!([[2, -1], [-1, 2]]));
    assert_eq!(v["det"], 3);
    assert_eq!(v["lattice"]["order"], 1);
}

#[test]
fn half_root_difference_in_c2() {
    let v = golden("compare_c2", &["compare", "C2:sc", "1,0", "0,1", "--lambda", "0,1"]);
    assert_eq!(v["nu_le_mu"]["lambda_rational_dominance"], true);
    assert_eq!(v["nu_le_mu"]["lambda_dominance"], false);
    assert_eq!(v["nu_le_mu"]["dominance"], false);
    assert_eq!(v["difference_root_coords"], json!([0, "-1/2"]));
    assert_eq!(v["difference_in_lambda_cone"], true);
}

#[test]
fn maximal_multiples_of_omega1_in_sl4() {
    let pg = golden("pi_g_plus_a3_3w1", &["pi-g-plus", "A3:sc", "3,0,0"]);
    let set = weight_list(&pg["pi_g_plus"]);
    let v = golden(
        "maximal_a3_3w1",
        &["maximal", "A3:sc", "--set", &set, "--order", "lambda", "--lambda", "3,0,0"],
    );
    expect_set(&v["maximal"], &["3,0,0", "2,0,0", "1,0,0", "0,0,0"]);
}

#[test]
fn pi_g_plus_sp4() {
    let v = golden("pi_g_plus_c2_w2", &["pi-g-plus", "C2:sc", "0,1"]);
    expect_set(&v["pi_g_plus"], &["0,1", "1,0", "0,0"]);
}

#[test]
fn simply_laced_groups_have_no_adjoint_little_brothers() {
    for (name, g, l) in [
        ("lb_a3_110", "A3:sc", "1,1,0"),
        ("lb_d4_0100", "D4:sc", "0,1,0,0"),
        ("lb_e6_w1", "E6:sc", "1,0,0,0,0,0"),
    ] {
        let v = golden(name, &["little-brothers", g, l]);
        assert_eq!(v["lb_adjoint"], json!([]), "{g} {l}");
    }
}

#[test]
fn g2_twin() {
    let info = golden("info_g2", &["info", "G2:sc"]);
    // alpha_2 is the long simple root
    assert_eq!(info["simple_root_lengths"], json!([1, 3]));
    for (name, l, twin) in [("lb_g2_0_1", "0,1", "1,0"), ("lb_g2_0_3", "0,3", "1,2")] {
        let v = golden(name, &["little-brothers", "G2:sc", l]);
        expect_set(&v["lb_adjoint"], &[twin]);
    }
}

#[test]
fn q_maximal_omega1_in_sl() {
    let v = golden("lb_a3_3w1", &["little-brothers", "A3:sc", "3,0,0"]);
    expect_set(&v["q_maximal"], &["3,0,0", "2,0,0", "1,0,0", "0,0,0"]);
    let v = golden("lb_a2_4w1", &["little-brothers", "A2:sc", "4,0"]);
    expect_set(&v["q_maximal"], &["4,0", "3,0", "2,0"]);
}

#[test]
fn q_maximal_omega1_in_spin() {
    let v = golden("lb_b3_2w1", &["little-brothers", "B3:sc", "2,0,0"]);
    expect_set(&v["q_maximal"], &["0,0,1", "1,0,0", "2,0,0"]);
    let v = golden("lb_b4_3w1", &["little-brothers", "B4:sc", "3,0,0,0"]);
    expect_set(&v["q_maximal"], &["1,0,0,1", "2,0,0,0", "3,0,0,0"]);
}

#[test]
fn rational_little_brothers_omega1_in_sl() {
    let v = golden("lb_a3_w1", &["little-brothers", "A3:sc", "1,0,0"]);
    expect_set(&v["lb_q"], &["0,0,0"]);
    let v = golden("lb_a4_3w1", &["little-brothers", "A4:sc", "3,0,0,0"]);
    expect_set(&v["lb_q"], &["2,0,0,0"]);
}

#[test]
fn rational_little_brother_in_sp() {
    let v = golden("lb_c3_2w3", &["little-brothers", "C3:sc", "0,0,2"]);
    assert_eq!(v["lb_q"], json!([[0, 1, 1]]));
    let v = golden("lb_c3_110", &["little-brothers", "C3:sc", "1,1,0"]);
    expect_set(&v["lb_q"], &["2,0,0"]);
    let v = golden("lb_c2_w1", &["little-brothers", "C2:sc", "1,0"]);
    expect_set(&v["lb_q"], &["0,0"]);
}

#[test]
fn omega3_in_sl6() {
    let v = golden("lb_a5_3w3", &["little-brothers", "A5:sc", "0,0,3,0,0"]);
    let lb = set_of(&v["lb_q"]);
    assert_eq!(lb.len(), 7);
    for mu in ["0,2,0,0,0", "0,0,0,2,0"] {
        assert!(lb.contains(&mu.to_string()), "{mu} missing from {lb:?}");
    }
}

#[test]
fn h_set_of_sp6_omega3() {
    let v = golden("lb_c3_w3", &["little-brothers", "C3:sc", "0,0,1"]);
    expect_set(&v["lb_q"], &["0,1,0"]);
    assert_eq!(v["h"], json!([[0, 0, "-1/2"]]));
}

#[test]
fn h_sets_agree_with_lambda_bar() {
    for (name, g, l) in [("lb_a3_4w2", "A3:sc", "0,4,0"), ("lb_b3_4w1", "B3:sc", "4,0,0")] {
        let v = golden(name, &["little-brothers", g, l]);
        let bar = weight_text(&v["lambda_bar"]);
        let w = golden(&format!("{name}_bar"), &["little-brothers", g, &bar]);
        assert_eq!(v["h_m"], w["h_m"], "{g} {l}");
        assert_eq!(v["h"], w["h"], "{g} {l}");
    }
}

#[test]
fn normality_of_omega2_in_sl4() {
    let pg = golden("pi_g_plus_a3_2w2", &["pi-g-plus", "A3:sc", "0,2,0"]);
    let pi = weight_list(&pg["pi_g_plus"]);
    let v = golden(
        "classify_a3_pi_2w2",
        &["classify", "A3:sc", "--pi", &pi, "--question", "normality"],
    );
    assert_eq!(v["answer"], true);
    assert_eq!(v["missing"], json!([]));

    let pg = golden("pi_g_plus_a3_w2", &["pi-g-plus", "A3:sc", "0,1,0"]);
    let pi = weight_list(&pg["pi_g_plus"]);
    let v = golden(
        "classify_a3_pi_w2",
        &["classify", "A3:sc", "--pi", &pi, "--question", "normality"],
    );
    assert_eq!(v["answer"], false);

    let v = golden(
        "classify_a3_w2",
        &["classify", "A3:sc", "--pi", "0,1,0", "--question", "normality"],
    );
    assert_eq!(v["answer"], false);
    assert!(!v["missing"].as_array().unwrap().is_empty());
}

#[test]
fn full_polytopes_in_sp_are_normal() {
    for (name, g, l) in [
        ("c2_w2", "C2:sc", "0,1"),
        ("c3_101", "C3:sc", "1,0,1"),
        ("c4_0011", "C4:sc", "0,0,1,1"),
    ] {
        let pg = golden(&format!("pi_g_plus_{name}"), &["pi-g-plus", g, l]);
        let pi = weight_list(&pg["pi_g_plus"]);
        let v = golden(
            &format!("classify_{name}_full"),
            &["classify", g, "--pi", &pi, "--question", "normality"],
        );
        assert_eq!(v["answer"], true, "{g} {l}");
    }
}

#[test]
fn normality_of_omega2_in_sp4() {
    let v = golden("classify_c2_w2", &["classify", "C2:sc", "--pi", "0,1", "--question", "normality"]);
    assert_eq!(v["answer"], false);
    assert_eq!(v["certificate"]["missing_untranslated"], json!([[1, 0]]));
    let v = golden(
        "classify_c2_w2_w1",
        &["classify", "C2:sc", "--pi", "0,1;1,0", "--question", "normality"],
    );
    assert_eq!(v["answer"], true);
}

#[test]
fn d4_middle_node_cone_is_not_simplicial() {
    let v = golden(
        "classify_d4_w2",
        &["classify", "D4:sc", "--pi", "0,1,0,0", "--question", "q-factoriality"],
    );
    assert_eq!(v["answer"], false);
    assert_eq!(v["certificate"]["cone"]["is_simplicial"], false);
}

#[test]
fn smooth_sp6_example() {
    let v = golden(
        "classify_c3_smooth",
        &["classify", "C3:sc", "--pi", "0,1,1;0,2,0", "--question", "smoothness"],
    );
    assert_eq!(v["answer"], true);
}

#[test]
fn spin7_is_never_smooth() {
    for (name, pi) in [("classify_b3_w1", "1,0,0"), ("classify_b3_w3", "0,0,1"), ("classify_b3_111", "1,1,1")] {
        let v = golden(name, &["classify", "B3:sc", "--pi", pi, "--question", "smoothness"]);
        assert_eq!(v["answer"], false, "{pi}");
    }
}

#[test]
fn pgl4_extremal_support() {
    let v = golden("classify_a3ad_4w1", &["classify", "A3:ad", "--pi", "4,0,0", "--question", "smoothness"]);
    assert_eq!(v["answer"], true);
    let v = golden("classify_a3ad_2w2", &["classify", "A3:ad", "--pi", "0,2,0", "--question", "smoothness"]);
    assert_eq!(v["answer"], false);
}

#[test]
fn sl5_multiplication_is_not_surjective() {
    let v = golden("oracle_products_a4", &["oracle", "products", "A4:sc", "1,0,0,1", "1,1,0,0"]);
    assert_eq!(v["contained_in_any"], false);
    assert_eq!(v["products"].as_array().unwrap().len(), 10);
    // nu lies below 2 lambda, so V(nu) does occur in degree two of the section ring
    let c = golden("compare_a4_nu_2lambda", &["compare", "A4:sc", "1,1,0,0", "2,0,0,2"]);
    assert_eq!(c["nu_le_mu"]["rational_dominance"], true);
}

#[test]
fn prv_component_in_sl3() {
    let v = golden("oracle_prv_a2", &["oracle", "prv", "A2:sc", "1,1", "1,1", "--w-prime", "1,2,1"]);
    assert_eq!(v["nu"], json!([0, 0]));
    assert_eq!(v["contains"], true);
}

#[test]
fn translation_in_sl2() {
    let v = golden("oracle_contains_a1_0", &["oracle", "contains", "A1:sc", "0", "--factors", "1;1"]);
    assert_eq!(v["contains"], true);
    let v = golden("oracle_contains_a1_1", &["oracle", "contains", "A1:sc", "1", "--factors", "2;1"]);
    assert_eq!(v["contains"], true);
}

#[test]
fn bruteforce_sp4_omega2() {
    let v = golden(
        "oracle_verify_c2_w2",
        &["oracle", "verify-normality", "C2:sc", "--pi", "0,1", "--max-n", "3"],
    );
    assert_eq!(v["theorem"], false);
    assert_ne!(v["brute_force"], true);
    assert_eq!(v["agrees"], true);
    // the little brother omega_1, translated by the regularization
    let lb = v["per_nu"]
        .as_array()
        .unwrap()
        .iter()
        .find(|s| s["nu"] == json!([1, 1]))
        .unwrap();
    assert_ne!(lb["search"]["status"], "witness");
}
