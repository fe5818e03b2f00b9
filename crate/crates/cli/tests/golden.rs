mod common;

#[test]
fn transcripts_match_golden_files() {
    for name in ["a2", "a3", "dual"] {
        let text = common::transcript(name, &["--jobs", "1"]);
        let path = common::golden(name);
        if std::env::var_os("UPDATE_GOLDEN").is_some() {
            std::fs::write(&path, &text).unwrap();
        }
        let expected = std::fs::read_to_string(&path).expect("golden file; run with UPDATE_GOLDEN=1");
        assert_eq!(text, expected, "{name} transcript drifted");
        assert_eq!(common::transcript(name, &["--jobs", "4"]), expected, "{name} depends on the job count");
    }
}

#[test]
fn witness_replay_succeeds_everywhere() {
    for name in ["a2", "a3", "dual"] {
        for cmd in common::transcript_commands(name) {
            let mut args = cmd.clone();
            args.push("--verify-witness");
            let (code, v) = common::json(name, &args);
            assert!(code == 0 || code == 1, "{name} {cmd:?} exited {code}");
            if let Some(r) = v.get("witness_replay") {
                assert_eq!(r["ok"], true, "{name} {cmd:?}: {r}");
            }
        }
    }
}
