use std::process::Command;

use proptest::prelude::*;
use reflexivity::Expression;

fn exit_code(args: &[&str]) -> i32 {
    Command::new(env!("CARGO_BIN_EXE_reflex"))
        .args(args)
        .output()
        .expect("spawn reflex")
        .status
        .code()
        .expect("exit code")
}

fn token_soup() -> impl Strategy<Value = String> {
    let tokens = [
        "x", "y", "2", "0.5", "+", "-", "*", "/", "^", "(", ")", "sin", "log", "sqrt", "e", "1e",
        "#", " ",
    ];
    prop::collection::vec(prop::sample::select(tokens.to_vec()), 1..12).prop_map(|t| t.concat())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn commands_exit_with_a_scheme_code(f in token_soup(), cmd in prop::sample::select(vec!["simulate", "fixed-points", "distance", "period", "boom-bust", "staircase", "portrait"])) {
        let code = exit_code(&[cmd, "--f", &f, "--phi", "y", "--x0", "0.5", "--domain", "0.1", "1"]);
        prop_assert!([0, 2, 3, 4].contains(&code), "{cmd} --f {f:?} exited {code}");
        if Expression::parse(&f).is_err() {
            prop_assert_eq!(code, 2, "{} --f {:?}", cmd, f);
        }
    }

    #[test]
    fn malformed_numbers_are_usage_errors(junk in "[a-z#%]{1,6}") {
        prop_assert_eq!(exit_code(&["simulate", "--f", "x", "--phi", "y", "--x0", &junk]), 2);
        prop_assert_eq!(exit_code(&["fixed-points", "--f", "x", "--phi", "y", "--grid", &junk]), 2);
    }
}
