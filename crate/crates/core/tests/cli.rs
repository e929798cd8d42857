use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

use clap::Parser;
use serde_json::Value;
use srgrank::cli::{run, Cli, Outcome};
use srgrank::graph6::decode_graph6;
use srgrank::iso::are_isomorphic;
use srgrank::{symplectic_graph, Error};

fn exec(args: &[&str], stdin: &[u8]) -> srgrank::Result<Outcome> {
    let cli = Cli::try_parse_from(std::iter::once("srgrank").chain(args.iter().copied()))
        .map_err(|e| Error::Usage(e.to_string()))?;
    run(&cli, &mut &stdin[..])
}

fn ok(args: &[&str], stdin: &[u8]) -> Outcome {
    exec(args, stdin).unwrap_or_else(|e| panic!("{args:?}: {e}"))
}

fn scratch(name: &str, contents: &[u8]) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("srgrank-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn sp_reports_parameters_and_rank() {
    let out = ok(&["sp", "--nu", "3"], b"");
    assert_eq!(out.outputs["params"]["v"], 63);
    assert_eq!(out.outputs["params"]["lambda"], 16);
    assert_eq!(out.outputs["rank2"], 6);
    let g = decode_graph6(out.stdout.trim_end().as_bytes()).unwrap();
    assert_eq!(g.adjacency(), symplectic_graph(3).unwrap().adjacency());

    assert_eq!(ok(&["sp", "--nu", "2"], b"").outputs["rank2"], 4);
    assert!(matches!(exec(&["sp", "--nu", "1"], b""), Err(Error::Usage(_))));
    assert!(matches!(exec(&["sp", "--nu", "7"], b""), Err(Error::Usage(_))));
}

#[test]
fn switch_is_an_involution() {
    let sp = ok(&["sp", "--nu", "3"], b"").stdout;
    let once = ok(&["switch", "-", "--prop4"], sp.as_bytes());
    assert_eq!((once.outputs["rank_before"].clone(), once.outputs["rank_after"].clone()), (6.into(), 8.into()));
    let twice = ok(&["switch", "-", "--prop4"], once.stdout.as_bytes());
    assert_eq!(twice.stdout, sp);
}

#[test]
fn switch_set_forms() {
    let sp = ok(&["sp", "--nu", "3"], b"").stdout;
    // Row vectors and integer labels name the same vertices.
    let rows = ok(&["switch", "-", "--set", "100000,010000,101000,011000"], sp.as_bytes());
    let ints = ok(&["switch", "-", "--set", "1,2,5,6"], sp.as_bytes());
    assert_eq!(rows.stdout, ints.stdout);
    assert_eq!(rows.outputs["rank_after"], 8);
    assert!(matches!(
        exec(&["switch", "-", "--set", "1,2,5"], sp.as_bytes()),
        Err(Error::Usage(_))
    ));
    assert!(matches!(
        exec(&["switch", "-", "--set", "1,2,3,4"], sp.as_bytes()),
        Err(Error::InvalidSet(_))
    ));
    assert!(exec(&["switch", "-"], sp.as_bytes()).is_err());
}

#[test]
fn census_of_five_cycle_stays_within_two() {
    let c5 = srgrank::graph6::to_graph6_string(&srgrank::Graph::cycle(5)) + "\n";
    let out = ok(&["census", "-"], c5.as_bytes());
    let base = out.outputs["base_rank"].as_u64().unwrap();
    for key in out.outputs["by_rank"].as_object().unwrap().keys() {
        let r: u64 = key.parse().unwrap();
        assert!(r.abs_diff(base) <= 2 && r % 2 == 0);
    }
}

#[test]
fn census_guard() {
    let big = srgrank::graph6::to_graph6_string(&srgrank::Graph::empty(129)) + "\n";
    assert!(matches!(exec(&["census", "-"], big.as_bytes()), Err(Error::Size(_))));
}

#[test]
fn chain_modes() {
    let replay = ok(&["chain", "--replay-published"], b"");
    let ranks: Vec<u64> = std::iter::once(&replay.outputs["start_rank"])
        .chain(replay.outputs["steps"].as_array().unwrap().iter().map(|s| &s["rank_after"]))
        .map(|v| v.as_u64().unwrap())
        .collect();
    assert_eq!(ranks, [6, 8, 10, 12, 14, 16, 18]);

    let zero = ok(&["chain", "--greedy", "--max-steps", "0"], b"");
    assert_eq!(zero.outputs["steps"].as_array().unwrap().len(), 0);
    assert_eq!(zero.outputs["final_rank"], 6);

    let six = ok(&["chain", "--greedy", "--max-steps", "6"], b"");
    assert_eq!(six.outputs["final_rank"], 18);
    assert!(exec(&["chain"], b"").is_err());
}

#[test]
fn hadamard_pipeline() {
    let power = ok(&["hadamard", "power", "--nu", "3"], b"");
    let g = ok(&["hadamard", "graph-of", "-"], power.stdout.as_bytes());
    let g = decode_graph6(g.stdout.trim_end().as_bytes()).unwrap();
    assert!(are_isomorphic(&g, &symplectic_graph(3).unwrap()).unwrap());

    let h4 = ok(&["hadamard", "power", "--nu", "1"], b"");
    assert_eq!(ok(&["hadamard", "rho", "-"], h4.stdout.as_bytes()).stdout, "2\n");
}

#[test]
fn substitution_of_rank_18_block() {
    let replay = ok(&["chain", "--replay-published"], b"");
    let g6 = replay.outputs["steps"][5]["graph6"].as_str().unwrap().to_string();
    let graph_file = scratch("rank18.g6", format!("{g6}\n").as_bytes());
    let h = ok(&["hadamard", "of-graph", graph_file.to_str().unwrap()], b"");
    assert_eq!(h.outputs["rho"], 18);
    let h_file = scratch("rank18.h6", h.stdout.as_bytes());
    let blocks = format!("{},H4", h_file.display());
    let sub = ok(&["hadamard", "substitute", "--blocks", &blocks], b"");
    assert_eq!(sub.outputs["order"], 256);
    assert_eq!(ok(&["hadamard", "rho", "-"], sub.stdout.as_bytes()).stdout, "20\n");
}

#[test]
fn iso_commands() {
    let sp = ok(&["sp", "--nu", "3"], b"").stdout;
    let switched = ok(&["switch", "-", "--prop4"], sp.as_bytes()).stdout;
    let a = scratch("a.g6", sp.as_bytes());
    let b = scratch("b.g6", switched.as_bytes());
    let (a, b) = (a.to_str().unwrap(), b.to_str().unwrap());
    assert_eq!(ok(&["iso", "compare", a, a], b"").stdout, "true\n");
    assert_eq!(ok(&["iso", "compare", a, b], b"").stdout, "false\n");

    let many = format!("{sp}{switched}{sp}");
    let report = ok(&["iso", "classify", "-"], many.as_bytes());
    let classes = report.outputs["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 2);
    assert_eq!(classes[0]["member_indices"], serde_json::json!([0, 2]));
    assert_eq!(classes[1]["rank2"], 8);

    let canon = ok(&["iso", "canon", "-"], many.as_bytes()).stdout;
    let lines: Vec<&str> = canon.lines().collect();
    assert_eq!(lines[0], lines[2]);
    assert_ne!(lines[0], lines[1]);
}

#[test]
fn rank_of_matrix_text_and_graphs() {
    assert_eq!(ok(&["rank", "-"], b"3 3\n110\n011\n101").stdout, "2\n");
    let sp = ok(&["sp", "--nu", "2"], b"").stdout;
    assert_eq!(ok(&["rank", "-"], sp.as_bytes()).stdout, "4\n");
    assert!(matches!(exec(&["rank", "-"], b"2 2\n12\n00"), Err(Error::Parse { .. })));
}

#[test]
fn verify_descriptor() {
    let sp = ok(&["sp", "--nu", "3"], b"").stdout;
    let g6 = sp.trim_end();
    let good = scratch(
        "good.json",
        format!(
            r#"{{"graph6":"{g6}","n":63,"params":{{"v":63,"k":32,"lambda":16,"mu":16}},"rank2":6,"rank_bound":true,"labels":{:?}}}"#,
            (1..=63).collect::<Vec<u64>>()
        )
        .as_bytes(),
    );
    let out = ok(&["verify", good.to_str().unwrap()], b"");
    assert_eq!(out.outputs["ok"], true);
    assert!(out.failure.is_none());

    let bad = scratch("bad.json", format!(r#"{{"graph6":"{g6}","rank2":8}}"#).as_bytes());
    let out = ok(&["verify", bad.to_str().unwrap()], b"");
    assert_eq!(out.outputs["ok"], false);
    assert!(out.failure.unwrap().contains("rank2"));

    let unknown = scratch("unknown.json", br#"{"graph6":"Bw","colour":1}"#);
    assert!(matches!(exec(&["verify", unknown.to_str().unwrap()], b""), Err(Error::Parse { .. })));
}

#[test]
fn input_digests_are_recorded() {
    let out = ok(&["rank", "-"], b"1 1\n1");
    assert_eq!(out.inputs.len(), 1);
    assert_eq!(out.inputs[0].path, "-");
    assert_eq!(out.inputs[0].sha256.len(), 64);
}

fn binary(args: &[&str], stdin: &[u8]) -> (i32, String, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_srgrank"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin).unwrap();
    let out = child.wait_with_output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn binary_exit_codes_and_error_prefix() {
    let (code, stdout, _) = binary(&["sp", "--nu", "2"], b"");
    assert_eq!(code, 0);
    assert_eq!(stdout.lines().count(), 1);

    let (code, stdout, stderr) = binary(&["sp", "--nu", "1"], b"");
    assert_eq!(code, 1);
    assert!(stdout.is_empty());
    assert!(stderr.starts_with("error: "), "{stderr}");

    let (code, _, stderr) = binary(&["rank", "-"], b"@@@\n!");
    assert_eq!(code, 1);
    assert!(stderr.starts_with("error: parse error"), "{stderr}");
}

#[test]
fn json_reports_are_stable_across_thread_counts() {
    let body = |threads: &str| {
        let (code, stdout, _) = binary(&["--json", "--threads", threads, "chain", "--greedy"], b"");
        assert_eq!(code, 0);
        let mut v: Value = serde_json::from_str(&stdout).unwrap();
        v.as_object_mut().unwrap().remove("duration_ms");
        v.as_object_mut().unwrap().remove("command");
        v
    };
    let one = body("1");
    assert_eq!(one, body("3"));
    assert_eq!(one["outputs"]["final_rank"], 18);
    assert_eq!(one["version"], env!("CARGO_PKG_VERSION"));
}
