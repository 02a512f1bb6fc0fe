use odometer_core::cli::run;

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn odometer(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("odometer").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn classify_iso_reports_swap() {
    let (code, out, _) = odometer(&[
        "classify",
        "--relation",
        "iso",
        &fixture("class35_1a.grp"),
        &fixture("class35_1b.grp"),
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("verdict=YES\n"));
    assert!(out.contains("witness=mat([0,1;1,0])\n"));
}

#[test]
fn classify_no_carries_certificate() {
    let (code, out, _) = odometer(&[
        "classify",
        "--relation",
        "coe",
        &fixture("class35_3a.grp"),
        &fixture("class35_3b.grp"),
    ]);
    assert_eq!(code, 1);
    assert!(out.contains("certificate=alpha must send line"));
    assert!(out.contains("verdict=NO\n"));
}

#[test]
fn classify_all_witnesses_lists_both_signs() {
    let (code, out, _) = odometer(&[
        "classify",
        "--relation",
        "coe",
        "--all-witnesses",
        &fixture("class11_fuchs.grp"),
        &fixture("class11_fuchs_swapped.grp"),
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("witness_count=2\n"));
    assert!(out.contains("candidate=mat([0,-1;-1,0])\n"));
    assert!(out.contains("candidate=mat([0,1;1,0])\n"));
}

#[test]
fn superindex_and_tau_examples() {
    let (code, out, _) = odometer(&["superindex", &fixture("class35_3a.grp")]);
    assert_eq!((code, out.as_str()), (0, "superindex=2^inf*3^inf*5^inf\n"));
    let (code, out, _) = odometer(&["tau", "--lattice", "[2,1;0,3]", "--h", "1/2,0"]);
    assert_eq!((code, out.as_str()), (0, "tau=(1/2, 0)\n"));
}

#[test]
fn gallery_names_stand_in_for_missing_files() {
    let (code, out, _) = odometer(&["canon", "class11_fuchs.grp"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("canonical="));
    let (code, _, _) = odometer(&["canon", "no_such_group.grp"]);
    assert_eq!(code, 66);
}

#[test]
fn exit_codes() {
    assert_eq!(odometer(&["frobnicate"]).0, 64);
    assert_eq!(odometer(&["classify", "--relation", "iso"]).0, 64);
    assert_eq!(
        odometer(&["classify", "--relation", "nope", "a", "b"]).0,
        64
    );
    assert_eq!(odometer(&["--help"]).0, 0);
    let (code, out, err) = odometer(&["parse", &fixture("syntax_error.grp")]);
    assert_eq!(code, 65);
    assert!(out.starts_with("offset="));
    assert!(err.contains("syntax error at byte"));
    let (code, _, err) = odometer(&[
        "classify",
        "--relation",
        "oe",
        &fixture("free_fails.grp"),
        &fixture("class35_1a.grp"),
    ]);
    assert_eq!(code, 65);
    assert!(err.contains("not dense"));
}

#[test]
fn free_member_equal() {
    assert_eq!(
        odometer(&["free", &fixture("free_fails.grp")]).1,
        "free=false\n"
    );
    assert_eq!(
        odometer(&["free", &fixture("class35_1a.grp")]).1,
        "free=true\n"
    );
    let f = fixture("class11_fuchs.grp");
    assert_eq!(
        odometer(&["member", &f, "--vector", "1/5,1/5"]).1,
        "member=true\n"
    );
    assert_eq!(
        odometer(&["member", &f, "--vector", "1/5,-1/5"]).1,
        "member=false\n"
    );
    let (a, b) = (fixture("class35_4a.grp"), fixture("class35_1a.grp"));
    assert_eq!(odometer(&["equal", &a, &b]).1, "equal=true\n");
}

#[test]
fn rigid_verify_passes() {
    let (code, out, _) = odometer(&["rigid", "--levels", "3", "--verify"]);
    assert_eq!(code, 0);
    assert!(out.contains("level3.det=32579\n"));
    assert!(out.contains("verdict=YES\n"));
}

#[test]
fn output_is_deterministic() {
    let f = fixture("class35_2a.grp");
    let args = [
        "simulate",
        f.as_str(),
        "--depth",
        "3",
        "--steps",
        "5",
        "--seed",
        "7",
    ];
    assert_eq!(odometer(&args), odometer(&args));
    let (_, out, _) = odometer(&["spectrum", &f, "--height", "5"]);
    assert!(out.contains("eigenvalue=(0, 1/5)\n"));
}

#[test]
fn dual_tower_h1_coinv() {
    assert_eq!(
        odometer(&["dual", "--lattice", "[2,1;0,3]"]).1,
        "dual=[1/6,2/3;0,1]\n"
    );
    let f = fixture("class11_fuchs.grp");
    assert!(odometer(&["tower", &f, "--depth", "3"])
        .1
        .contains("index_3=6\n"));
    assert!(odometer(&["h1", &f, "--depth", "2"])
        .1
        .contains("levels_verified=true\n"));
    assert_eq!(odometer(&["coinv", &f]).1, "coinvariants=2^inf*3^inf*5^1\n");
}

#[test]
fn verify_suite_passes() {
    let (code, out, _) = odometer(&["verify", "--suite", "paper"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(
        out.lines().filter(|l| l.starts_with("criterion_")).count(),
        11
    );
    assert!(out.ends_with("suite=PASS\n"));
    assert_eq!(odometer(&["verify", "--suite", "other"]).0, 64);
}
