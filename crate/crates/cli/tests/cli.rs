use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::NamedTempFile;

const HYPERELLIPTIC_SEVEN: &str = r#"{
  "group": {"p": 7, "n": 1, "c": 12, "chi": 2},
  "cover": {"genus_z": 0, "orbits": [
    {"e": 22, "jumps": [], "tame_order": 12, "phi": 11, "ord_ky": 11},
    {"e": 2, "jumps": [], "tame_order": 2, "phi": 1, "ord_ky": 1},
    {"e": -146, "jumps": [2], "tame_order": 12, "phi": 7, "ord_ky": -13}
  ]},
  "m": 2
}"#;

fn galmod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_galmod")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn doc(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn rows(text: &str) -> Vec<&str> {
    text.lines().filter(|l| !l.starts_with('#')).collect()
}

fn summary<'a>(text: &'a str, key: &str) -> Option<&'a str> {
    text.lines()
        .find_map(|l| l.strip_prefix("# ").and_then(|l| l.strip_prefix(key)).and_then(|l| l.strip_prefix('\t')))
}

#[test]
fn hyperelliptic_spot_value() {
    let o = galmod(&["hyperelliptic", "--p", "7", "--m", "2", "--expect"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert_eq!(rows(&text).len(), 11);
    assert!(rows(&text).contains(&"3\t1\t1"));
    assert!(rows(&text).contains(&"10\t5\t1"));
    assert_eq!(summary(&text, "total_dimension"), Some("69"));
    assert_eq!(summary(&text, "closed_form"), Some("match"));
}

#[test]
fn hyperelliptic_expectation_out_of_range() {
    let o = galmod(&["hyperelliptic", "--p", "7", "--m", "3", "--expect"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("3m < p"), "{}", stderr(&o));
    // Without --expect the engine alone runs fine.
    assert_eq!(galmod(&["hyperelliptic", "--p", "7", "--m", "3"]).status.code(), Some(0));
}

#[test]
fn modular_audit_level_seven() {
    let o = galmod(&["modular", "--l", "7", "--m", "2", "--audit"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert_eq!(rows(&text), vec!["projective\tP(eta1)\t1\t6"]);
    assert_eq!(summary(&text, "audit"), Some("pass"));
    assert_eq!(summary(&text, "total_dimension"), Some("6"));
}

#[test]
fn modular_sign_flag() {
    let plus = stdout(&galmod(&["modular", "--l", "13", "--m", "2", "--s01", "+1"]));
    let minus = stdout(&galmod(&["modular", "--l", "13", "--m", "2", "--s01", "-1"]));
    assert!(plus.contains("P(T10)\t1"), "{plus}");
    assert!(minus.contains("P(T01)\t1"), "{minus}");
    assert_eq!(galmod(&["modular", "--l", "13", "--m", "2", "--s01", "2"]).status.code(), Some(2));
    assert_eq!(galmod(&["modular", "--l", "9", "--m", "2"]).status.code(), Some(1));
}

#[test]
fn riemann_roch_from_file() {
    let f = doc(HYPERELLIPTIC_SEVEN);
    let o = galmod(&["riemann-roch", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert_eq!(rows(&text).len(), 11);
    assert_eq!(summary(&text, "total_dimension"), Some("69"));
    assert_eq!(summary(&text, "genus_x"), Some("24"));
}

#[test]
fn poly_diff_matches_riemann_roch() {
    let f = doc(HYPERELLIPTIC_SEVEN);
    let path = f.path().to_str().unwrap();
    let rr = stdout(&galmod(&["riemann-roch", path]));
    let pd = stdout(&galmod(&["poly-diff", path]));
    assert_eq!(rows(&rr), rows(&pd));
    let three = galmod(&["poly-diff", path, "--m", "3"]);
    assert_eq!(summary(&stdout(&three), "total_dimension"), Some("115"));
}

#[test]
fn poly_diff_needs_m() {
    let f = doc(&HYPERELLIPTIC_SEVEN.replace(",\n  \"m\": 2", ""));
    let o = galmod(&["poly-diff", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--m"));
}

#[test]
fn missing_canonical_data_names_the_orbit() {
    let f = doc(&HYPERELLIPTIC_SEVEN.replace(", \"ord_ky\": 1}", "}"));
    let o = galmod(&["poly-diff", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("MissingCanonicalData") && err.contains("orbit 1"), "{err}");
}

#[test]
fn differentials_and_tangent() {
    let f = doc(HYPERELLIPTIC_SEVEN);
    let path = f.path().to_str().unwrap();
    let o = galmod(&["diff", path]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(summary(&stdout(&o), "total_dimension"), Some("24"));
    let o = galmod(&["tangent", path]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(summary(&stdout(&o), "tangent_dimension"), Some("1"));
    assert_eq!(summary(&stdout(&o), "coinvariant_dimension"), Some("1"));
}

#[test]
fn degree_too_small() {
    let f = doc(r#"{"group": {"p": 5, "n": 1, "c": 1, "chi": 0},
                   "cover": {"genus_z": 3, "orbits": [{"e": 1, "jumps": [], "tame_order": 1, "phi": 0}]}}"#);
    let o = galmod(&["riemann-roch", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("DegreeTooSmall"), "{}", stderr(&o));
    assert!(stdout(&o).is_empty());
}

#[test]
fn parse_errors_exit_two() {
    let f = doc(&HYPERELLIPTIC_SEVEN.replace("\"phi\": 1,", "\"phii\": 1,"));
    let o = galmod(&["riemann-roch", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("unknown field `phii`") && err.contains("line 5"), "{err}");

    let f = doc("{ not json");
    assert_eq!(galmod(&["diff", f.path().to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(galmod(&["diff", "/nonexistent/input.json"]).status.code(), Some(2));
    assert_eq!(galmod(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(galmod(&["--help"]).status.code(), Some(0));
}

#[test]
fn invalid_group_exits_one() {
    let f = doc(&HYPERELLIPTIC_SEVEN.replace("\"p\": 7", "\"p\": 6"));
    let o = galmod(&["riemann-roch", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("NotPrime"));
}

/// Every TSV row and summary line has a JSON counterpart with the same value.
fn assert_agree(args: &[&str]) {
    let tsv = stdout(&galmod(args));
    let mut with_json = args.to_vec();
    with_json.push("--json");
    let json: Value = serde_json::from_str(&stdout(&galmod(&with_json))).unwrap();
    let json_rows = json["rows"].as_array().unwrap();
    let tsv_rows = rows(&tsv);
    assert_eq!(json_rows.len(), tsv_rows.len());
    for (j, t) in json_rows.iter().zip(tsv_rows) {
        let cells: Vec<String> = j
            .as_object()
            .unwrap()
            .values()
            .map(|v| v.as_str().map_or_else(|| v.to_string(), str::to_string))
            .collect();
        assert_eq!(cells.join("\t"), t);
    }
    for line in tsv.lines().filter_map(|l| l.strip_prefix("# ")) {
        let (key, value) = line.split_once('\t').unwrap();
        let mut node = &json;
        for part in key.split('.') {
            node = match part.split_once('[') {
                Some((name, idx)) => &node[name][idx.trim_end_matches(']').parse::<usize>().unwrap()],
                None => &node[part],
            };
        }
        let rendered = match node {
            Value::String(s) => s.clone(),
            Value::Array(items) => items.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","),
            Value::Null => "-".into(),
            other => other.to_string(),
        };
        assert_eq!(rendered, value, "field {key}");
    }
}

#[test]
fn json_and_tsv_agree() {
    let f = doc(HYPERELLIPTIC_SEVEN);
    let path = f.path().to_str().unwrap();
    assert_agree(&["riemann-roch", path, "--trace"]);
    assert_agree(&["diff", path, "--trace"]);
    assert_agree(&["tangent", path]);
    assert_agree(&["hyperelliptic", "--p", "11", "--m", "3", "--expect"]);
    assert_agree(&["modular", "--l", "11", "--m", "6", "--audit", "--trace"]);
    assert_agree(&["sweep", "local", "--max", "13"]);
}

#[test]
fn output_is_sorted_and_deterministic() {
    let a = stdout(&galmod(&["hyperelliptic", "--p", "13", "--m", "3"]));
    let b = stdout(&galmod(&["hyperelliptic", "--p", "13", "--m", "3"]));
    assert_eq!(a, b);
    let keys: Vec<(u64, u64)> = rows(&a)
        .iter()
        .map(|l| {
            let mut it = l.split('\t').map(|x| x.parse::<u64>().unwrap());
            (it.next().unwrap(), it.next().unwrap())
        })
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn sweeps() {
    for (suite, max) in [("hyperelliptic", "19"), ("modular", "23"), ("local", "19"), ("synthetic", "90")] {
        let o = galmod(&["sweep", suite, "--max", max]);
        assert_eq!(o.status.code(), Some(0), "{suite}: {}", stderr(&o));
        assert_eq!(summary(&stdout(&o), "failures"), Some("0"));
    }
    let serial = stdout(&galmod(&["sweep", "synthetic", "--max", "120", "--seed", "9"]));
    let parallel = stdout(&galmod(&["sweep", "synthetic", "--max", "120", "--seed", "9", "--parallel"]));
    assert_eq!(serial, parallel);
    assert_eq!(summary(&serial, "cases"), Some("120"));
}
