use std::process::Command as Process;

use proptest::prelude::*;
use usalg_cli::ast::*;
use usalg_cli::{parse_script, run_command, Args, Command, Environment, Property, RingScript};
use usalg_core::{kills_module, Budget};

const EXAMPLE: &str = include_str!("../corpus/example.ring");
const CORPUS: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/corpus");

fn sp<T>(node: T) -> Spanned<T> {
    Spanned::new(node, Span::default())
}

fn run(src: &str, command: Command, args: Args) -> usalg_cli::Outcome {
    run_command(&parse_script(src).unwrap(), command, &args, Budget::default()).unwrap()
}

#[test]
fn example_script_has_four_declarations() {
    let s = parse_script(EXAMPLE).unwrap();
    let kinds: Vec<&str> = s.decls.iter().map(Decl::kind).collect();
    assert_eq!(kinds, ["ring", "const", "ring", "mulset"]);
}

#[test]
fn usvnr_check_on_the_example() {
    let out = run(
        EXAMPLE,
        Command::Check,
        Args {
            property: Some(Property::UsVnr),
            ..Args::default()
        },
    );
    assert_eq!(out.exit_code, 0);
    let json: serde_json::Value = serde_json::from_str(&out.report.to_json()).unwrap();
    assert_eq!(json["verdict"], true);
    assert_eq!(json["witnesses"], serde_json::json!({ "s": "(1,0)" }));
    assert_eq!(json["modules"]["R"]["vnr"], false);
    assert_eq!(json["modules"]["R"]["vnr_counterexample"], "x");
    assert!(json["timing_ms"].is_null());
}

#[test]
fn false_checks_exit_with_one() {
    let out = run(
        EXAMPLE,
        Command::Check,
        Args {
            property: Some(Property::Vnr),
            ..Args::default()
        },
    );
    assert_eq!(out.report.verdict, Some(false));
    assert_eq!(out.exit_code, 1);
    assert_eq!(out.report.counterexample.unwrap()["a"], "x");
}

#[test]
fn tor_on_zmod8_matches_the_oracle() {
    let out = run(
        "ring R8 = zmod(8)",
        Command::Tor,
        Args {
            n: Some(1),
            left: Some("cyclic(R8;2)".into()),
            right: Some("cyclic(R8;4)".into()),
            ..Args::default()
        },
    );
    let tor = &out.report.modules.unwrap()["tor"];
    assert_eq!(tor["size"], 2);
    assert_eq!(tor["oracle_isomorphic"], true);
}

#[test]
fn verify_on_a_field_uses_witness_one() {
    let out = run("ring F = zmod(5)", Command::Verify, Args::default());
    let suites = out.report.suites.unwrap();
    assert!(!suites.is_empty());
    for s in &suites {
        assert_eq!(s.status, usalg_cli::SuiteStatus::Pass, "{}", s.name);
        assert!(s.witnesses.iter().all(|w| w == "1"), "{}: {:?}", s.name, s.witnesses);
    }
}

#[test]
fn verify_on_an_empty_script() {
    let out = run("", Command::Verify, Args::default());
    let json = serde_json::to_string(&out.report).unwrap();
    assert!(json.starts_with(r#"{"command":"verify","suites":[],"#), "{json}");
}

#[test]
fn module_checks_replay() {
    let src = "ring R = zmod(12)\nmulset S on R = close(2)\nmodule M on R = cyclic(R; 4)\nmodule N on R = M (+) regular(R)";
    let env = Environment::build(&parse_script(src).unwrap(), Budget::default()).unwrap();
    let m = env.module(&sp("M".into())).unwrap();
    let r = &m.ring.ring;
    for prop in [Property::UsTorsion, Property::UsFlat, Property::SFinite] {
        let out = run(
            src,
            Command::Check,
            Args {
                property: Some(prop),
                module: Some("M".into()),
                ..Args::default()
            },
        );
        assert_eq!(out.report.verdict, Some(true), "{prop:?}");
        let s = r.find_label(&out.report.witnesses.unwrap()["s"]).unwrap();
        if prop == Property::UsTorsion {
            assert!(kills_module(&m.module, s));
        }
    }
    let out = run(
        src,
        Command::Check,
        Args {
            property: Some(Property::STorsionFree),
            ..Args::default()
        },
    );
    assert_eq!(out.report.verdict, Some(false));
}

#[test]
fn usexact_check_on_a_declared_sequence() {
    let src = "ring R = zmod(6)\nmulset S on R = close(3)\nmodule I on R = ideal(R; 2)\nmodule B on R = regular(R)\nmodule C on R = cyclic(R; 2)\nsequence E = I -> B -> C via incl, proj";
    let out = run(
        src,
        Command::Check,
        Args {
            property: Some(Property::UsExact),
            ..Args::default()
        },
    );
    assert_eq!(out.report.verdict, Some(true));
    assert_eq!(out.report.witnesses.unwrap()["s"], "1");
}

fn usalg(args: &[&str], envs: &[(&str, &str)]) -> std::process::Output {
    let mut p = Process::new(env!("CARGO_BIN_EXE_usalg"));
    p.args(args);
    for (k, v) in envs {
        p.env(k, v);
    }
    p.output().unwrap()
}

#[test]
fn exit_codes_and_budget_precedence() {
    let example = format!("{CORPUS}/example.ring");
    let cyclic = format!("{CORPUS}/cyclic.ring");
    assert_eq!(usalg(&["check", "--script", &example, "--property", "usvnr"], &[]).status.code(), Some(0));
    assert_eq!(usalg(&["check", "--script", &example, "--property", "vnr"], &[]).status.code(), Some(1));
    assert_eq!(usalg(&["check", "--script", &example, "--property", "nope"], &[]).status.code(), Some(2));
    assert_eq!(usalg(&["analyze", "--script", "/nonexistent.ring"], &[]).status.code(), Some(2));
    let tight = [("USALG_MAX_CARRIER", "4")];
    assert_eq!(usalg(&["analyze", "--script", &cyclic], &tight).status.code(), Some(3));
    let out = usalg(&["analyze", "--script", &cyclic, "--max-carrier", "64", "--json"], &tight);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["budget"]["max_carrier"], 64);
    let out = usalg(&["tor", "--script", &cyclic, "--n", "2", "--left", "cyclic(Z4; 2)", "--right", "cyclic(Z4; 2)", "--tor-depth", "1"], &[]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn positioned_errors_reach_stderr() {
    let dir = std::env::temp_dir().join(format!("usalg-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.ring");
    std::fs::write(&path, "ring A = zmod(4)\r\nconst c : A = (1,\r\n").unwrap();
    let out = usalg(&["analyze", "--script", path.to_str().unwrap()], &[]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 3, column 1"), "{err}");
    std::fs::remove_dir_all(&dir).unwrap();
}

fn name() -> impl Strategy<Value = String> {
    "[A-Z][a-z0-9]{0,3}"
}

fn elem() -> impl Strategy<Value = ElemExpr> {
    let leaf = prop_oneof![
        (0u64..20).prop_map(ElemExpr::Int),
        Just(ElemExpr::X),
        name().prop_map(ElemExpr::Name),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        let b = move || inner.clone().prop_map(|e| Box::new(sp(e)));
        prop_oneof![
            (b(), b()).prop_map(|(a, c)| ElemExpr::Pair(a, c)),
            b().prop_map(ElemExpr::Neg),
            (b(), b()).prop_map(|(a, c)| ElemExpr::Add(a, c)),
            (b(), b()).prop_map(|(a, c)| ElemExpr::Sub(a, c)),
            (b(), b()).prop_map(|(a, c)| ElemExpr::Mul(a, c)),
            (b(), 0u64..5).prop_map(|(a, k)| ElemExpr::Pow(a, k)),
        ]
    })
}

fn elems() -> impl Strategy<Value = Vec<Elem>> {
    prop::collection::vec(elem().prop_map(sp), 1..3)
}

fn ring_expr() -> impl Strategy<Value = RingExpr> {
    let term = prop_oneof![
        (1u64..50).prop_map(|n| RingExpr::Zmod(sp(n))),
        name().prop_map(|n| RingExpr::Name(sp(n))),
        (name(), elems()).prop_map(|(n, e)| RingExpr::PolyQuot(sp(n), e)),
        (name(), elems()).prop_map(|(n, e)| RingExpr::Quotient(sp(n), e)),
    ];
    prop::collection::vec(term, 1..4).prop_map(|terms| {
        let mut it = terms.into_iter();
        let first = it.next().unwrap();
        it.fold(first, |a, b| RingExpr::Product(Box::new(a), Box::new(b)))
    })
}

fn mod_expr() -> impl Strategy<Value = ModExpr> {
    let term = prop_oneof![
        name().prop_map(|n| ModExpr::Regular(sp(n))),
        (name(), elems()).prop_map(|(n, e)| ModExpr::Cyclic(sp(n), e)),
        (name(), elems()).prop_map(|(n, e)| ModExpr::Ideal(sp(n), e)),
        name().prop_map(|n| ModExpr::Name(sp(n))),
    ];
    prop::collection::vec(term, 1..4).prop_map(|terms| {
        let mut it = terms.into_iter();
        let first = it.next().unwrap();
        it.fold(first, |a, b| ModExpr::Sum(Box::new(a), Box::new(b)))
    })
}

fn hom() -> impl Strategy<Value = HomSpec> {
    prop_oneof![
        elem().prop_map(|e| HomSpec::MulBy(sp(e))),
        Just(HomSpec::Incl),
        Just(HomSpec::Proj),
        Just(HomSpec::Zero),
    ]
}

fn decl() -> impl Strategy<Value = Decl> {
    let n = || name().prop_map(sp);
    prop_oneof![
        (n(), ring_expr()).prop_map(|(name, expr)| Decl::Ring { name, expr }),
        (n(), n(), elem()).prop_map(|(name, ring, v)| Decl::Const { name, ring, value: sp(v) }),
        (n(), n(), prop::collection::vec(elem().prop_map(sp), 0..3))
            .prop_map(|(name, ring, gens)| Decl::MulSet { name, ring, gens }),
        (n(), n(), mod_expr()).prop_map(|(name, ring, expr)| Decl::Module { name, ring, expr }),
        (n(), n(), n(), n(), hom(), hom()).prop_map(|(name, a, b, c, f, g)| Decl::Sequence {
            name,
            a,
            b,
            c,
            f: sp(f),
            g: sp(g),
        }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn print_then_parse_round_trips(decls in prop::collection::vec(decl(), 0..6)) {
        let script = RingScript { source: String::new(), decls };
        let text = script.to_string();
        let again = parse_script(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        prop_assert_eq!(&again, &script);
        prop_assert_eq!(again.to_string(), text);
    }

    #[test]
    fn reports_are_deterministic(n in 2usize..13, g in 0usize..13) {
        let src = format!("ring R = zmod({n})\nmulset S on R = close({})\nmodule M on R = cyclic(R; {})", g % n, (g + 1) % n);
        let args = |p| Args { property: Some(p), ..Args::default() };
        for p in [Property::UsVnr, Property::UsFlat, Property::UsTorsion] {
            let a = run(&src, Command::Check, args(p)).report.to_json();
            let b = run(&src, Command::Check, args(p)).report.to_json();
            prop_assert_eq!(a, b);
        }
    }
}
