use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use netsched::Report;
use netsched_core::circuit::{Circuit, GanttSchedule};
use netsched_core::netmap::ActivityNetwork;
use netsched_core::partition::{InteractionGraph, PartitionFile};
use netsched_core::scheduler::Schedule;

fn netsched(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_netsched"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn read<T: serde::de::DeserializeOwned>(dir: &Path, name: &str) -> T {
    serde_json::from_str(&fs::read_to_string(dir.join(name)).unwrap()).unwrap()
}

fn snapshot(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (
                e.file_name().into_string().unwrap(),
                fs::read(e.path()).unwrap(),
            )
        })
        .collect();
    files.sort();
    files
}

#[test]
fn pipeline_writes_every_artifact_deterministically() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        let o = netsched(&[
            "pipeline",
            "--circuit",
            "qft:4",
            "--k",
            "2",
            "--topology",
            "paper2qpu",
            "--format",
            "json,ascii,svg",
            "--out",
            dir.path().to_str().unwrap(),
        ]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    }
    let names: Vec<String> = snapshot(a.path()).into_iter().map(|(n, _)| n).collect();
    for expected in [
        "circuit.json",
        "gantt_local.json",
        "gantt_local.svg",
        "gantt_local.txt",
        "graph.json",
        "partition.json",
        "nonlocal.json",
        "network.json",
        "schedule_greedy.json",
        "schedule_greedy.svg",
        "schedule_exact.json",
        "schedule_exact.svg",
        "schedule_exact.txt",
        "report.json",
    ] {
        assert!(names.iter().any(|n| n == expected), "missing {expected}");
    }
    assert_eq!(snapshot(a.path()), snapshot(b.path()));

    let dir = a.path();
    let report: Report = read(dir, "report.json");
    assert_eq!(report.activities, 16);
    assert!(report.exact.as_ref().unwrap().makespan <= report.greedy.as_ref().unwrap().makespan);
    let _: Circuit = read(dir, "circuit.json");
    let _: GanttSchedule = read(dir, "gantt_local.json");
    let _: InteractionGraph = read(dir, "graph.json");
    let p: PartitionFile = read(dir, "partition.json");
    assert_eq!(p.cut, 4);
    let n: ActivityNetwork = read(dir, "network.json");
    assert_eq!(
        serde_json::to_value(&n).unwrap(),
        serde_json::from_str::<serde_json::Value>(
            &fs::read_to_string(dir.join("network.json")).unwrap()
        )
        .unwrap()
    );
    let s: Schedule = read(dir, "schedule_exact.json");
    assert!(s.proved_optimal);
}

#[test]
fn four_qpu_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let o = netsched(&[
        "pipeline",
        "--circuit",
        "qft:4",
        "--k",
        "4",
        "--decompose-swaps",
        "--topology",
        "paper4qpu",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let report: Report = read(dir.path(), "report.json");
    assert_eq!((report.jobs, report.activities), (12, 48));
    assert_eq!(report.gap, Some(0));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = netsched(&["pipeline", "--circuit", "qft:1", "--k", "2", "--out", out]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("partition"));
    assert_eq!(code(&netsched(&["pipeline", "--no-such-flag"])), 1);
    assert_eq!(
        code(&netsched(&["pipeline", "--circuit", "qft:4", "--out", out])),
        1
    );
    assert_eq!(
        code(&netsched(&[
            "pipeline",
            "--circuit",
            "qft:4",
            "--k",
            "3",
            "--topology",
            "paper2qpu",
            "--out",
            out
        ])),
        1
    );
    // greedy cannot fit 16 activities into 10 steps: reported as a validation failure
    let o = netsched(&[
        "pipeline",
        "--circuit",
        "qft:4",
        "--k",
        "2",
        "--topology",
        "paper2qpu",
        "--method",
        "greedy",
        "--horizon",
        "10",
        "--out",
        out,
    ]);
    assert_eq!(code(&o), 2);
    assert!(dir.path().join("network.json").exists());
}

#[test]
fn stages_chain_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let circuit = d.join("qft4.txt");
    let o = netsched(&[
        "gen",
        "--circuit",
        "qft:4",
        "--out",
        circuit.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let c = circuit.to_str().unwrap();
    let out = d.to_str().unwrap();
    assert_eq!(
        code(&netsched(&[
            "partition",
            "--circuit",
            c,
            "--k",
            "2",
            "--out",
            out
        ])),
        0
    );
    let partition = d.join("partition.json");
    let o = netsched(&[
        "extract",
        "--circuit",
        c,
        "--partition",
        partition.to_str().unwrap(),
        "--topology",
        "paper2qpu",
        "--out",
        out,
    ]);
    assert_eq!(code(&o), 0);
    let network = d.join("network.json");
    let o = netsched(&[
        "schedule",
        "--network",
        network.to_str().unwrap(),
        "--out",
        out,
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let schedule = d.join("schedule_exact.json");
    let o = netsched(&[
        "render",
        "--network",
        network.to_str().unwrap(),
        "--schedule",
        schedule.to_str().unwrap(),
        "--format",
        "ascii",
    ]);
    assert_eq!(code(&o), 0);
    let chart = String::from_utf8(o.stdout).unwrap();
    assert!(chart.contains("comm_switch#1"));

    // a tampered schedule is refused
    let mut s: Schedule = read(d, "schedule_exact.json");
    s.starts[2] = Some(0);
    fs::write(&schedule, serde_json::to_string(&s).unwrap()).unwrap();
    let o = netsched(&[
        "render",
        "--network",
        network.to_str().unwrap(),
        "--schedule",
        schedule.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 2);
}

#[test]
fn circuit_json_and_text_inputs_agree() {
    let dir = tempfile::tempdir().unwrap();
    let text = dir.path().join("c.txt");
    let json = dir.path().join("c.json");
    fs::write(&text, "qubits 2\nh 0\ncp 0 1 1/2\n").unwrap();
    assert_eq!(
        code(&netsched(&[
            "gen",
            "--circuit",
            text.to_str().unwrap(),
            "--json",
            "--out",
            json.to_str().unwrap()
        ])),
        0
    );
    let a = netsched(&["render", "--circuit", text.to_str().unwrap()]);
    let b = netsched(&["render", "--circuit", json.to_str().unwrap()]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    fs::write(&text, "qubits 1\nxx 0\n").unwrap();
    let o = netsched(&["gen", "--circuit", text.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}
