use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;
use trifree::io::{parse_lists, parse_request, parse_weights, write_lists, write_request, write_weights};
use trifree::planar::{parse_graph, write_graph};

fn trifree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trifree"))
        .args(args)
        .env_remove("TRIFREE_SEED")
        .env_remove("TRIFREE_TRIALS")
        .env_remove("TRIFREE_JOBS")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const CUBE: &str = "planar 8
v 0 : 1 4 3
v 1 : 0 2 5
v 2 : 3 6 1
v 3 : 0 7 2
v 4 : 0 5 7
v 5 : 4 1 6
v 6 : 7 5 2
v 7 : 4 6 3
";

#[test]
fn find_config_on_the_cube() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "cube.txt", CUBE);
    let o = trifree(&["find-config", s(&g)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("config small-33 vertices: 0 1"));
}

#[test]
fn discharge_on_a_five_cycle_disk() {
    let dir = TempDir::new().unwrap();
    let g =
        write(&dir, "c5.txt", "planar 5\nv 0 : 1 4\nv 1 : 2 0\nv 2 : 3 1\nv 3 : 4 2\nv 4 : 0 3\nouter : 0 1 2 3 4\n");
    let o = trifree(&["discharge", s(&g)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("total -2/3"));
}

#[test]
fn degree_four_vertex_is_not_reducible() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "star.txt", "planar 5\nv 0 : 1 2 3 4\nv 1 : 0\nv 2 : 0\nv 3 : 0\nv 4 : 0\n");
    let o = trifree(&["check-reducible", s(&g), "--subgraph", "0"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.starts_with("reducible false\nwitness FORB {0}\n"), "{out}");

    let o = trifree(&["check-reducible", s(&g), "--subgraph", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "reducible true\n");
}

#[test]
fn input_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.txt", "planar 2\nv 0 : 1\nv 1 : 0 x\n");
    let o = trifree(&["faces", s(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert_eq!(err.trim_end(), "error parse-error: line 3, column 9: expected a nonnegative integer");

    let o = trifree(&["faces", s(&dir.path().join("missing.txt"))]);
    assert_eq!(o.status.code(), Some(2));

    let g = write(&dir, "cube.txt", CUBE);
    let o = trifree(&["check-reducible", s(&g), "--subgraph", "42"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn coloring_answers() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "edge.txt", "planar 2\nv 0 : 1\nv 1 : 0\n");
    let same = write(&dir, "same.txt", "L 0 : 5\nL 1 : 5\n");
    let o = trifree(&["color", s(&g), s(&same)]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(1), "uncolorable\n".to_string()));
    let o = trifree(&["count", s(&g), s(&same)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("count 0\n"));

    let two = write(&dir, "two.txt", "L 0 : 5 6\nL 1 : 5\n");
    let o = trifree(&["color", s(&g), s(&two)]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(0), "c 0 6\nc 1 5\n".to_string()));
    let o = trifree(&["count", s(&g), s(&two)]);
    assert_eq!(stdout(&o), "count 1\nbound 2^(2/31)\nholds false\n");
}

#[test]
fn flex_and_estimate() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "cube.txt", CUBE);
    let l = write(&dir, "l.txt", &(0..8).map(|v| format!("L {v} : 1 2 3 4\n")).collect::<String>());
    let r = write(&dir, "r.txt", "r 0 3\nr 6 3\n");
    let o = trifree(&["flex", s(&g), s(&l), "--request", s(&r), "--trials", "200"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("fraction 1/1\n"), "{out}");
    assert!(out.contains("c 0 3\n") && out.contains("c 6 3\n"));

    let w = write(&dir, "w.txt", "w 0 1 1/2\nw 1 1 0.5\n");
    let o = trifree(&["flex", s(&g), s(&l), "--weights", s(&w), "--trials", "200"]);
    assert!(stdout(&o).starts_with("weight 1/1\ncollected 1/2\nfraction 1/2\n"), "{}", stdout(&o));

    let o = trifree(&["estimate", s(&g), s(&l), "--trials", "300"]);
    let out = stdout(&o);
    assert!(out.starts_with("trials 300\npair 0 1 "));
    assert_eq!(out.lines().filter(|x| x.starts_with("pair ")).count(), 32);
    let eps = format!("epsilon 1/{}", num_bigint::BigInt::from(4).pow(93));
    assert_eq!(out.lines().last(), Some(eps.as_str()));

    let short = write(&dir, "short.txt", &(0..8).map(|v| format!("L {v} : 1 2 3\n")).collect::<String>());
    let o = trifree(&["estimate", s(&g), s(&short), "--trials", "10"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn env_overrides_match_flags() {
    let flag = trifree(&["gen", "--n", "30", "--seed", "12"]);
    let env = Command::new(env!("CARGO_BIN_EXE_trifree"))
        .args(["gen", "--n", "30"])
        .env("TRIFREE_SEED", "12")
        .output()
        .unwrap();
    assert_eq!(flag.stdout, env.stdout);
    assert_ne!(flag.stdout, trifree(&["gen", "--n", "30", "--seed", "13"]).stdout);
}

#[test]
fn emitted_files_round_trip() {
    for seed in ["1", "2", "3"] {
        for kind in ["triangle-free", "small-free", "quadrangulation"] {
            let text = stdout(&trifree(&["gen", "--kind", kind, "--n", "40", "--seed", seed]));
            let g = parse_graph(&text).unwrap();
            assert_eq!(write_graph(&g), text);
            assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);

            let dir = TempDir::new().unwrap();
            let p = write(&dir, "g.txt", &text);
            let lt = stdout(&trifree(&["gen", "--lists-for", s(&p), "--seed", seed]));
            let l = parse_lists(&lt).unwrap();
            assert_eq!(write_lists(&l, g.vertices()), lt);
        }
    }
    let r = parse_request("r 3 1\nr 0 2 # comment\n").unwrap();
    assert_eq!(parse_request(&write_request(&r)).unwrap(), r);
    let w = parse_weights("w 0 1 0.25\nw 2 3 7/3\n").unwrap();
    assert_eq!(write_weights(&w), "w 0 1 1/4\nw 2 3 7/3\n");
    assert_eq!(parse_weights(&write_weights(&w)).unwrap(), w);
}

#[test]
fn faces_lists_walks_and_outer() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "sq.txt", "planar 4\nv 0 : 1 3\nv 1 : 2 0\nv 2 : 3 1\nv 3 : 0 2\nouter : 0 1 2 3\n");
    let out = stdout(&trifree(&["faces", s(&g)]));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[..2].iter().all(|l| l.starts_with("face ")));
    assert!(lines[2].starts_with("outer "));
}
