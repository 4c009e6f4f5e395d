#![allow(dead_code)]

use std::process::Command;

use serde_json::Value;

pub fn sumcore(args: &[&str], threads: usize) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_sumcore"))
        .args(args)
        .env("SUMCORE_THREADS", threads.to_string())
        .output()
        .expect("binary runs");
    (out.status.code().expect("exit code"), String::from_utf8(out.stdout).unwrap())
}

pub fn json(text: &str) -> Value {
    serde_json::from_str(text).unwrap_or_else(|e| panic!("{e}: {text}"))
}

/// Drops the digits after `"wall_time_ms":` so two runs compare byte for byte.
pub fn without_wall_time(text: &str) -> String {
    let key = "\"wall_time_ms\":";
    match text.find(key) {
        Some(at) => {
            let rest = &text[at + key.len()..];
            let digits = rest.len() - rest.trim_start_matches(|c: char| c.is_ascii_digit()).len();
            format!("{}{}", &text[..at + key.len()], &rest[digits..])
        }
        None => text.to_string(),
    }
}

/// One invocation per subcommand; every output must match across worker caps.
pub fn subcommand_runs(dir: &std::path::Path) -> Vec<Vec<String>> {
    let tri = dir.join("tri.json");
    std::fs::write(&tri, r#"{"b":[40,32,24,16,8,0],"c":[24,32,40,48,56,64]}"#).unwrap();
    let toml = dir.join("exp.toml");
    std::fs::write(
        &toml,
        "model = \"zwindow:4096:2048\"\nset = \"bohr(665857/470832, 1/4)\"\n[operation]\nop = \"witness\"\nk = 4\n",
    )
    .unwrap();
    let w = |s: &str| s.split_whitespace().map(String::from).collect::<Vec<_>>();
    let mut runs = vec![
        w("gen --model zwindow:1000:500 --set bernoulli(1/3,5)"),
        w("gen --model cyclic:12 --set complement(multiples(4)) --encoding plain"),
        w("density --model zwindow:5000:2500 --set bernoulli(1/2,1) --schedule 10,100,1000"),
        w("density --model zwindow:5000:2500 --set pow2 --n 64 --lower"),
        w("find-point --model zwindow:10000:5000 --set bernoulli(1/2,3) --alpha 3/4 --N 32"),
        w("ladder --model zwindow:4096:2048 --set threshold(1024) --k-max 5"),
        w("ladder --model zwindow:4096:2048 --set multiples(3) --k-max 3"),
        w("witness --model zwindow:65536:32768 --set multiples(5) --k 6"),
        w("witness --model zwindow:2048:1024 --set bernoulli(1/2,2) --k 3 --budget 5000"),
        w("witness --model zwindow:2048:1024 --set bernoulli(1/2,2) --k 3 --mode heuristic"),
        w("triangular --model zwindow:4096:2048 --set pow2 --m 3"),
        w("triangular --model zwindow:1024:512 --set bernoulli(1/2,4) --m 5 --mode heuristic --scorer random --seed 17"),
        w("upgrade --model zwindow:512:256 --set threshold(64) --m 7"),
        w("defwitness --model zwindow:4096:2048 --set bohr(665857/470832,1/4) --family aps --n 8"),
        w("defwitness --model zwindow:1000:500 --set bernoulli(1/2,1) --n 4"),
        w("growth --model zwindow:65536:32768 --set pow2 --k-max 3"),
        w("syndetic --model cyclic:12 --set multiples(3)"),
        w("syndetic --model zwindow:400:200 --set bernoulli(3/10,11) --core 0,200 --shifts -12,1"),
        w("syndetic --model zwindow:400:200 --set bernoulli(3/10,11) --core 0,200 --shifts -12,1 --mode heuristic"),
    ];
    runs.push(vec!["upgrade".into(), "--witness".into(), tri.display().to_string()]);
    runs.last_mut().unwrap().extend(w("--model zwindow:512:256 --set threshold(64)"));
    runs.push(vec!["run".into(), "--config".into(), toml.display().to_string()]);
    runs
}
