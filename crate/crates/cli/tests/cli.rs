use std::io::Read;
use std::process::{Command, Output, Stdio};

fn hfcodec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hfcodec"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = hfcodec(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn exit_code(args: &[&str]) -> Option<i32> {
    hfcodec(args).status.code()
}

#[test]
fn golden_outputs() {
    let cases: [(&[&str], &str); 10] = [
        (&["decode", "perm", "2008"], "[1,4,3,2,0,5,6]\n"),
        (
            &["decode", "hfs", "42", "--format", "show"],
            "{{{}},{{},{{}}},{{},{{{}}}}}\n",
        ),
        (&["decode", "tuple", "42", "--arity", "3"], "[2,1,2]\n"),
        (&["encode", "ftuple", "[1,0,2,1,3]"], "21295\n"),
        (
            &["encode", "perm", "--sized", "[0,3,6,5,4,7,1,2]"],
            "8 2008\n",
        ),
        (&["encode", "perm", "[1,4,3,2,0,5,6]"], "2008\n"),
        (&["encode", "set", "[]"], "0\n"),
        (&["enumerate", "perm", "0", "3"], "[]\n[0]\n[0,1]\n"),
        (
            &["show", "hff", "1234567890", "--ulimit", "10"],
            "(3 2 0 1 7 0 1 2 0 2 2)\n",
        ),
        (
            &["decode", "--codec", "pair-bitmerge", "0x7d8"],
            "[60,26]\n",
        ),
    ];
    for (args, want) in cases {
        assert_eq!(stdout_of(args), want, "{args:?}");
    }
}

#[test]
fn enumerate_hfs_and_ftuple() {
    assert_eq!(
        stdout_of(&["enumerate", "hfs", "0", "5", "--format", "show"]),
        "{}\n{{}}\n{{{}}}\n{{},{{}}}\n{{{{}}}}\n"
    );
    assert_eq!(
        stdout_of(&["enumerate", "hfs", "0", "5"]),
        "()\n(())\n((()))\n(() (()))\n(((())))\n"
    );
    let tuples = stdout_of(&["enumerate", "ftuple", "0", "16"]);
    let want = [
        "[]",
        "[0,0]",
        "[1]",
        "[0,0,0]",
        "[2]",
        "[1,0]",
        "[3]",
        "[0,0,0,0]",
        "[4]",
        "[0,1]",
        "[5]",
        "[1,0,0]",
        "[6]",
        "[1,1]",
        "[7]",
        "[0,0,0,0,0]",
    ];
    assert_eq!(tuples.lines().collect::<Vec<_>>(), want);
}

#[test]
fn dot_export() {
    let dot = stdout_of(&["dot", "hfs", "42"]);
    assert!(dot.starts_with("digraph hf {\n"));
    assert!(dot.ends_with("}\n"));
    // 6 distinct subtrees, 9 child edges
    assert_eq!(dot.matches("shape=").count(), 6);
    assert_eq!(dot.matches(" -> ").count(), 9);
}

#[test]
fn every_codec_round_trips_through_the_shell() {
    let codecs = [
        "set",
        "fun",
        "ftuple",
        "rle",
        "perm",
        "factoradic-r",
        "factoradic-l",
        "pair-cantor",
        "pair-pepis",
        "pair-bitmerge",
        "tuple",
        "hfs",
        "hff",
        "hff1",
        "hff2",
        "hfp",
    ];
    for codec in codecs {
        let mut extra: Vec<&str> = Vec::new();
        if codec == "tuple" {
            extra.extend(["--arity", "3"]);
        }
        let mut args = vec!["enumerate", codec, "0", "500"];
        args.extend(&extra);
        let listing = stdout_of(&args);
        let lines: Vec<&str> = listing.lines().collect();
        assert_eq!(lines.len(), 500, "{codec}");
        for (n, text) in lines.iter().enumerate() {
            let mut args = vec!["encode", codec, text];
            args.extend(&extra);
            assert_eq!(stdout_of(&args).trim_end(), n.to_string(), "{codec} {text}");
        }
    }
}

#[test]
fn usage_errors_exit_2() {
    let cases: [&[&str]; 11] = [
        &["decode", "tuple", "42"],
        &["decode", "nosuch", "42"],
        &["decode", "hfs", "-3"],
        &["decode", "set", "42", "--format", "dot"],
        &["encode", "set", "[3,1]"],
        &["encode", "perm", "[0,0,1]"],
        &["encode", "ftuple", "[0]"],
        &["encode", "hfs", "(a0"],
        &["encode", "tuple", "[1,2]", "--arity", "3"],
        &["decode", "perm", "--sized", "3", "6"],
        &["frobnicate"],
    ];
    for args in cases {
        assert_eq!(exit_code(args), Some(2), "{args:?}");
    }
}

#[test]
fn recursion_limit_from_environment() {
    let deep = format!("{}{}", "(".repeat(6), ")".repeat(6));
    let run = |limit: &str| {
        Command::new(env!("CARGO_BIN_EXE_hfcodec"))
            .args(["encode", "hff", &deep])
            .env("HFCODEC_RECURSION_LIMIT", limit)
            .output()
            .unwrap()
    };
    let limited = run("3");
    assert_eq!(limited.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&limited.stderr).contains("depth limit"));
    assert_eq!(run("6").status.code(), Some(0));
    assert_eq!(run("lots").status.code(), Some(2));
}

#[test]
fn enumerate_ends_quietly_when_reader_closes() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_hfcodec"))
        .args(["enumerate", "hff", "0", "1000000000000"])
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut first = [0u8; 64];
    child
        .stdout
        .as_mut()
        .unwrap()
        .read_exact(&mut first)
        .unwrap();
    drop(child.stdout.take());
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(
        out.stderr.is_empty(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn selfcheck_exit_codes() {
    let out = hfcodec(&["selfcheck", "1000", "13"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(
        text.lines()
            .all(|l| l.starts_with("PASS") || l.ends_with("0 failed")),
        "{text}"
    );

    assert_eq!(exit_code(&["selfcheck", "0", "0"]), Some(0));

    let out = hfcodec(&["selfcheck", "0", "0", "--inject-fault"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .contains("FAIL injected fault"));
}
