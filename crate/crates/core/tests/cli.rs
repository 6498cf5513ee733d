use std::path::PathBuf;
use std::process::Command;

use flowknot::cli::{cmd_flowcat, cmd_grid, cmd_gridflow_report, cmd_khovanov, run, Config};
use flowknot::grid::Coefficients;
use flowknot::khovanov::LadybugPolicy;
use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn int() -> Config {
    Config { coefficients: Coefficients::Int, ..Config::default() }
}

fn bin(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_flowknot")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn total(rows: &Value) -> u64 {
    rows.as_array().unwrap().iter().map(|r| r["betti"].as_u64().unwrap()).sum()
}

#[test]
fn khovanov_report_of_fig5() {
    let r = cmd_khovanov(&data("fig5.pd"), &int()).unwrap();
    assert!(r.ok);
    assert_eq!(r.json["schema"], 1);
    assert_eq!(r.json["generators"], 12);
    assert_eq!(r.json["generators_per_vertex"]["01"], 4);
    assert_eq!(total(&r.json["homology"]), 4);
    assert_eq!(r.json["ladybugs"].as_array().unwrap().len(), 1);
}

#[test]
fn unknot_file_has_two_generators() {
    let r = cmd_khovanov(&data("unknot.pd"), &Config::default()).unwrap();
    assert_eq!(r.json["generators"], 2);
    assert_eq!(total(&r.json["homology"]), 2);
}

#[test]
fn flowcat_reports_ladybug_matching_per_policy() {
    let left = Config { policy: LadybugPolicy::Left, ..Config::default() };
    let r = cmd_flowcat(Some(&data("fig5.pd")), None, &left).unwrap();
    assert!(r.ok);
    assert_eq!(r.json["ladybug_pairings"][0]["matching"], serde_json::json!(["ea-hd", "fb-gc"]));
    let r = cmd_flowcat(Some(&data("fig5.pd")), None, &Config::default()).unwrap();
    assert_eq!(r.json["ladybug_pairings"][0]["matching"], serde_json::json!(["ea-gc", "fb-hd"]));
    assert_eq!(r.json["realization"]["shift"], 2);
    assert_eq!(r.json["realization"]["matches_chain_homology"], true);
}

#[test]
fn flowcat_fig9_polygons_are_hexagons() {
    let r = cmd_flowcat(Some(&data("fig9.pd")), None, &int()).unwrap();
    assert!(r.ok);
    let polys = r.json["polygons"].as_array().unwrap();
    assert_eq!(polys.len(), 1);
    assert_eq!(polys[0]["flowlines"], 12);
    assert_eq!(polys[0]["cycles"], serde_json::json!([6, 6]));
    assert!(r.json["coherence"]["dim2"].as_array().unwrap().is_empty());
}

#[test]
fn flowcat_hypercube() {
    let r = cmd_flowcat(None, Some(3), &Config::default()).unwrap();
    assert!(r.ok);
    assert_eq!(r.json["polygons"][0]["cycles"], serde_json::json!([6]));
}

#[test]
fn grid_reports() {
    for (file, rank) in [("unknot2.grid", 2), ("unknot3.grid", 4), ("trefoil.grid", 48)] {
        for cfg in [Config::default(), int()] {
            let r = cmd_grid(&data(file), false, &cfg).unwrap();
            assert!(r.ok, "{file}");
            assert_eq!(r.json["total_rank"], rank, "{file}");
            assert_eq!(r.json["signs"]["violations"], 0);
        }
    }
    let r = cmd_grid(&data("unknot3.grid"), true, &int()).unwrap();
    assert_eq!(r.json["cd"]["homology"][0]["betti"], 1);
    assert_eq!(total(&r.json["cd"]["homology"]), 1);
}

#[test]
fn gridflow_report_counts() {
    let r = cmd_gridflow_report(&data("unknot3.grid"), &Config::default()).unwrap();
    assert!(r.ok);
    assert_eq!(r.json["domains_per_mu"]["1"], 27);
    assert_eq!(r.json["moduli_shapes"]["1"]["point"], 27);
    assert_eq!(r.json["moduli_shapes"]["2"]["interval"], 72);
    assert_eq!(r.json["two_ends_failures"], 0);
    assert_eq!(r.json["strip_pairs"].as_array().unwrap().len(), 3);
}

#[test]
fn json_output_is_deterministic() {
    let args = ["flowcat", data("fig9.pd").to_str().unwrap(), "--json"].map(String::from);
    let a = bin(&args.each_ref().map(String::as_str));
    let b = bin(&args.each_ref().map(String::as_str));
    assert_eq!(a.0, 0);
    assert_eq!(a.1, b.1);
    let v: Value = serde_json::from_str(&a.1).unwrap();
    assert_eq!(v["schema"], 1);
}

#[test]
fn exit_codes() {
    let dir = std::env::temp_dir().join(format!("flowknot-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.pd");
    std::fs::write(&bad, "PD[X[1,2,3,4]]\nX[1,2,q,4]\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_flowknot")).arg("khovanov").arg(&bad).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert_eq!(run(["flowknot", "gridflow", "report", "x.grid", "--mu-max", "5"]), 2);
    assert_eq!(run(["flowknot", "grid", "missing.grid"]), 2);
    assert_eq!(run(["flowknot", "grid", data("unknot2.grid").to_str().unwrap()]), 0);
    std::fs::remove_dir_all(dir).unwrap();
}
