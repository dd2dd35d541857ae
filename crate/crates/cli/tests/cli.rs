use masterlist_cli::{run, Outcome};
use serde_json::Value;

fn mlist(args: &[&str]) -> Outcome {
    run(std::iter::once("mlist").chain(args.iter().copied()))
}

fn json(o: &Outcome) -> Value {
    serde_json::from_str(&o.stdout).unwrap_or_else(|e| panic!("bad json {e}: {}", o.stdout))
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn generated(dir: &tempfile::TempDir, name: &str, args: &[&str]) -> String {
    let o = mlist(args);
    assert_eq!(o.code, 0, "{}", o.stderr);
    write(dir, name, &o.stdout)
}

#[test]
fn check_four_cycle_is_none() {
    let dir = tempfile::tempdir().unwrap();
    let f = generated(&dir, "i1.txt", &["gen", "four-cycles", "1"]);
    let o = mlist(&["check", &f]);
    assert_eq!(o.code, 1);
    let doc = json(&o);
    assert_eq!(doc["command"], "check");
    assert_eq!(doc["value"], "NONE");
    assert_eq!(doc["verified"], true);
}

#[test]
fn check_master_list_instance() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(&dir, "v.txt", "v : a = b > c\na : v\nb : v\nc : v\n");
    let o = mlist(&["check", &f]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(json(&o)["verified"], true);
}

#[test]
fn vertex_distance_of_jkn() {
    let dir = tempfile::tempdir().unwrap();
    let f = generated(&dir, "j.txt", &["gen", "jkn", "3", "5"]);
    let o = mlist(&["dist", "--measure", "vert", "--mode", "exact", "--budget", "3", &f]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let doc = json(&o);
    // deleting b1, b2 is cheaper than deleting s1, s2, s3
    assert_eq!(doc["value"], 2);
    assert_eq!(doc["verified"], true);
    let o = mlist(&["dist", "--measure", "vert", "--budget", "1", &f]);
    assert_eq!(o.code, 1);
    assert_eq!(json(&o)["value"], "NONE");
}

#[test]
fn swap_and_edge_distance_of_four_cycles() {
    let dir = tempfile::tempdir().unwrap();
    let f = generated(&dir, "i3.txt", &["gen", "four-cycles", "3"]);
    let swap = json(&mlist(&["dist", "--measure", "swap", "--budget", "10", &f]));
    assert_eq!(swap["value"], 6);
    assert_eq!(swap["verified"], true);
    let edge = json(&mlist(&["dist", "--measure", "edge", "--budget", "3", &f]));
    assert_eq!(edge["value"], 3);
    let approx = json(&mlist(&["dist", "--measure", "edge", "--mode", "approx", "--budget", "6", &f]));
    assert!(approx["value"].as_u64().unwrap() <= 6);
    assert_eq!(approx["verified"], true);
}

#[test]
fn enum_stable_auto_counts() {
    let dir = tempfile::tempdir().unwrap();
    let f = generated(&dir, "i3.txt", &["gen", "four-cycles", "3"]);
    let o = mlist(&["enum-stable", "--auto", &f]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let doc = json(&o);
    assert_eq!(doc["value"], 8);
    assert_eq!(doc["verified"], true);
    let oracle = json(&mlist(&["oracle", "stable", &f]));
    assert_eq!(oracle["value"], 8);
}

#[test]
fn mupmic_on_four_cycle() {
    let dir = tempfile::tempdir().unwrap();
    let f = generated(&dir, "i1.txt", &["gen", "four-cycles", "1"]);
    let w = write(&dir, "w.txt", "1 -- 2 : 1 1\n2 -- 3 : 1 1\n3 -- 4 : 1 1\n1 -- 4 : 1 1\n");
    let o = mlist(&["mupmic", "--weights", &w, "--target", "2", "--budget", "0", &f]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let doc = json(&o);
    assert_eq!(doc["value"], 2);
    assert_eq!(doc["verified"], true);
    let o = mlist(&["mupmic", "--weights", &w, "--target", "3", "--budget", "2", &f]);
    assert_eq!(o.code, 1);
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let asym = write(&dir, "a.txt", "a : b\nb :\n");
    let o = mlist(&["check", &asym]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("error"));
    assert_eq!(mlist(&["check", "/nonexistent/file"]).code, 2);
    assert_eq!(mlist(&["frobnicate"]).code, 2);
    assert_eq!(mlist(&["gen", "jkn", "4", "2"]).code, 2);
}

#[test]
fn generators_are_seeded() {
    let a = mlist(&["gen", "random", "6", "0.5", "0.3", "--seed", "7"]);
    let b = mlist(&["gen", "random", "6", "0.5", "0.3", "--seed", "7"]);
    let c = mlist(&["gen", "random", "6", "0.5", "0.3", "--seed", "8"]);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn reductions_agree_with_oracles() {
    let dir = tempfile::tempdir().unwrap();
    let f = generated(&dir, "fas.txt", &["gen", "fas-reduction", &write(&dir, "d.txt", "a -> b\nb -> a\nb -> c\nc -> a\n")]);
    let swap = json(&mlist(&["dist", "--measure", "swap", "--budget", "4", &f]));
    let oracle = json(&mlist(&["oracle", "swap", &f]));
    assert_eq!(swap["value"], 1);
    assert_eq!(oracle["value"], 1);
    let h = generated(&dir, "hs.txt", &["gen", "hitting-set", &write(&dir, "h.txt", "1 2 3\n1 2\n2 3\n3\n")]);
    let vert = json(&mlist(&["dist", "--measure", "vert", "--budget", "3", &h]));
    assert_eq!(vert["value"], 2);
}
