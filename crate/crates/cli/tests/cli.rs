use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

const C4: &str = "p edge 4 4\ne 1 2\ne 1 4\ne 2 3\ne 3 4\n";

fn equitree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_equitree"))
        .args(args)
        .env_remove("EQUITREE_NODE_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = path(dir, name);
    fs::write(&p, text).unwrap();
    p
}

#[test]
fn decide_goldens() {
    let out = equitree(&["decide", "--m", "7", "--n", "3", "--q", "2", "--t", "inf"]);
    assert_eq!(code(&out), 1);
    assert_eq!(
        stdout(&out),
        "{\"feasible\":false,\"orientation\":\"as-given\",\"clause\":\"none\",\"a\":5,\"r\":0,\"k\":null}\n"
    );

    let out = equitree(&["decide", "--m", "4", "--n", "4", "--q", "3", "--t", "2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out),
        "{\"feasible\":true,\"orientation\":\"as-given\",\"clause\":\"B.i\",\"a\":2,\"r\":2,\"k\":[1,0,0,1,0,0,1,0]}\n"
    );

    let out = equitree(&["decide", "--m", "2", "--n", "3", "--q", "2", "--proper"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("\"clause\":\"A.ii\""));

    let out = equitree(&[
        "decide",
        "--m",
        "3",
        "--n",
        "5",
        "--q",
        "2",
        "--t",
        "inf",
        "--with-coloring",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out),
        concat!(
            "{\"feasible\":true,\"orientation\":\"swapped\",\"clause\":\"B.ii\",\"a\":4,\"r\":0,",
            "\"k\":[0,1,0,0,0,0,0,1],\"coloring\":{\"q\":2,\"t\":\"inf\",\"classes\":[[4,5,6,7],[1,2,3,8]]}}\n"
        )
    );
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["decide", "--m", "2", "--n", "3", "--q", "2"][..],
        &[
            "decide", "--m", "2", "--n", "3", "--q", "2", "--t", "2", "--proper",
        ],
        &["decide", "--m", "x", "--n", "3", "--q", "2", "--t", "2"],
        &["decide", "--m", "2", "--n", "3", "--q", "2", "--t", "0"],
        &["decide", "--m", "2", "--n", "3", "--q", "0", "--t", "1"],
        &[
            "verify",
            "--graph",
            "/nonexistent/g.col",
            "--coloring",
            "/nonexistent/c.txt",
        ],
    ] {
        let out = equitree(args);
        assert_eq!(code(&out), 2, "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn color_then_verify_round_trip() {
    let dir = TempDir::new().unwrap();
    let (c, g) = (path(&dir, "c.txt"), path(&dir, "g.col"));
    let out = equitree(&[
        "color",
        "--m",
        "9",
        "--n",
        "2",
        "--q",
        "3",
        "--t",
        "3",
        "--out",
        &c,
        "--graph-out",
        &g,
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        fs::read_to_string(&c).unwrap(),
        "q 3 t 3\n1 1\n2 1\n3 1\n4 1\n5 2\n6 2\n7 2\n8 2\n9 3\n10 3\n11 3\n"
    );
    let out = equitree(&["verify", "--graph", &g, "--coloring", &c, "--equitable"]);
    assert_eq!((code(&out), stdout(&out)), (0, "OK\n".to_string()));
    // proper is impossible here, so the class with both sides fails
    let out = equitree(&["verify", "--graph", &g, "--coloring", &c, "--proper"]);
    assert_eq!(code(&out), 1);

    let out = equitree(&["color", "--m", "9", "--n", "2", "--q", "3", "--proper"]);
    assert_eq!(code(&out), 1);

    let j = path(&dir, "c.json");
    let out = equitree(&[
        "color",
        "--m",
        "4",
        "--n",
        "4",
        "--q",
        "3",
        "--t",
        "2",
        "--json",
        "--out",
        &j,
        "--graph-out",
        &g,
    ]);
    assert_eq!(code(&out), 0);
    let out = equitree(&["verify", "--graph", &g, "--coloring", &j, "--equitable"]);
    assert_eq!(code(&out), 0);
    let out = equitree(&["verify", "--graph", &g, "--coloring", &j, "--t", "1"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn verify_reports_cycle() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "k22.col", "p edge 4 4\ne 1 3\ne 1 4\ne 2 3\ne 2 4\n");
    let c = write(&dir, "c.txt", "q 1 t inf\n1 1\n2 1\n3 1\n4 1\n");
    let out = equitree(&["verify", "--graph", &g, "--coloring", &c]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout(&out), "FAIL class 1: cycle through edge 2 4\n");

    let c = write(&dir, "bad.txt", "q 1 t inf\n1 1\n2 1\n3 1\n");
    assert_eq!(
        code(&equitree(&["verify", "--graph", &g, "--coloring", &c])),
        2
    );
}

#[test]
fn reduce_outputs() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "c4.col", C4);
    let out = equitree(&["reduce", "npi", "--q", "3", "--in", &input]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("p edge 7 19\n"));

    let (gadget, sidecar) = (path(&dir, "npt.col"), path(&dir, "npt.json"));
    let out = equitree(&[
        "reduce",
        "npt",
        "--q",
        "2",
        "--t",
        "1",
        "--in",
        &input,
        "--out",
        &gadget,
        "--sidecar",
        &sidecar,
    ]);
    assert_eq!(code(&out), 0);
    assert!(fs::read_to_string(&gadget)
        .unwrap()
        .starts_with("p edge 16 28\n"));
    let side: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&sidecar).unwrap()).unwrap();
    assert_eq!(side["kind"], "npt");
    assert_eq!(side["t"], 1);
    assert_eq!(side["regions"].as_array().unwrap().len(), 5);
    assert_eq!(side["regions"][1]["attached_to"], 1);
    assert_eq!(side["labels"][4], "clique1:v1");

    let out = equitree(&["reduce", "pad", "--q", "2", "--in", &input]);
    assert!(stdout(&out).starts_with("p edge 12 4\n"));

    assert_eq!(
        code(&equitree(&["reduce", "npt", "--q", "2", "--in", &input])),
        2
    );
}

#[test]
fn oracle_tokens_and_exit_codes() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "c4.col", C4);
    let out = equitree(&[
        "oracle",
        "--in",
        &input,
        "--q",
        "2",
        "--proper",
        "--equitable",
    ]);
    assert_eq!(
        (code(&out), stdout(&out)),
        (0, "q 2 t 1\n1 1\n2 2\n3 1\n4 2\n".to_string())
    );

    let out = equitree(&["oracle", "--in", &input, "--q", "1"]);
    assert_eq!((code(&out), stdout(&out)), (1, "UNSAT\n".to_string()));

    let out = equitree(&["oracle", "--in", &input, "--q", "2", "--budget", "1"]);
    assert_eq!((code(&out), stdout(&out)), (3, "BUDGET\n".to_string()));

    let out = Command::new(env!("CARGO_BIN_EXE_equitree"))
        .args(["oracle", "--in", &input, "--q", "2"])
        .env("EQUITREE_NODE_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(code(&out), 3);
}

#[test]
fn decide_matches_oracle_within_cap() {
    let dir = TempDir::new().unwrap();
    for (m, n, q, t) in [
        (4, 4, 3, "2"),
        (9, 2, 3, "3"),
        (7, 3, 2, "inf"),
        (2, 3, 2, "1"),
    ] {
        let (m, n, q) = (m.to_string(), n.to_string(), q.to_string());
        let g = path(&dir, "g.col");
        let decided = equitree(&[
            "color",
            "--m",
            &m,
            "--n",
            &n,
            "--q",
            &q,
            "--t",
            t,
            "--graph-out",
            &g,
        ]);
        if code(&decided) == 1 {
            let (graph, _) =
                equitree::complete_bipartite(m.parse().unwrap(), n.parse().unwrap()).unwrap();
            fs::write(&g, equitree::format::write_dimacs(&graph)).unwrap();
        }
        let found = equitree(&["oracle", "--in", &g, "--q", &q, "--t", t, "--equitable"]);
        assert_eq!(code(&decided), code(&found), "K({m},{n}) q={q} t={t}");
    }
}

#[test]
fn sweep_goldens() {
    let out = equitree(&["sweep", "--max-sum", "4", "--max-q", "2", "--t-list", "inf"]);
    assert_eq!(code(&out), 0);
    let csv = stdout(&out);
    assert!(csv.starts_with("m,n,q,t,a,r,condA,condB,closed_form,kvector,oracle,agree\n"));
    assert!(csv.contains("\n2,2,2,inf,2,0,A.i,B.ii,true,true,true,true\n"));
    assert_eq!(csv.lines().count(), 13);

    let out = equitree(&[
        "sweep",
        "--max-sum",
        "10",
        "--max-q",
        "6",
        "--t-list",
        "1,2,3,inf",
    ]);
    assert_eq!(code(&out), 0);
    let csv = stdout(&out);
    assert!(csv.lines().skip(1).all(|l| l.ends_with(",true")));
    assert!(csv.contains("\n7,3,2,inf,5,0,none,none,false,false,false,true\n"));
    assert_eq!(
        csv,
        stdout(&equitree(&[
            "sweep",
            "--max-sum",
            "10",
            "--max-q",
            "6",
            "--t-list",
            "1,2,3,inf"
        ]))
    );
}

#[test]
fn files_are_byte_stable() {
    let dir = TempDir::new().unwrap();
    let runs: Vec<_> = (0..2)
        .map(|i| {
            let (c, g) = (path(&dir, &format!("c{i}")), path(&dir, &format!("g{i}")));
            equitree(&[
                "color",
                "--m",
                "5",
                "--n",
                "6",
                "--q",
                "4",
                "--t",
                "inf",
                "--out",
                &c,
                "--graph-out",
                &g,
            ]);
            (fs::read(&c).unwrap(), fs::read(&g).unwrap())
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
    assert!(Path::new(&path(&dir, "c0")).exists());
}
