use std::fs;
use std::path::PathBuf;

use greene_cli::run;
use tempfile::TempDir;

const DIAMOND: &str =
    "poset\nn 4\ncovers\n1 2\n1 3\n2 4\n3 4\nembedding\n1 0 0\n2 -1 1\n3 1 1\n4 0 2\n";

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn greene(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("greene").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn file(dir: &TempDir, name: &str, text: &str) -> String {
    let p: PathBuf = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn psi_planar_prints_the_product() {
    let dir = TempDir::new().unwrap();
    let d = file(&dir, "diamond.poset", DIAMOND);
    let r = greene(&["psi", &d, "--method", "planar"]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert_eq!(
        r.out,
        "(x1 - x4) / ((x1 - x2)*(x1 - x3)*(x2 - x4)*(x3 - x4))\n"
    );
}

#[test]
fn evaluation_at_a_point() {
    let dir = TempDir::new().unwrap();
    let d = file(&dir, "diamond.poset", DIAMOND);
    assert_eq!(greene(&["psi", &d, "--at", "1,2,3,5"]).out, "-1/3\n");
    assert_eq!(greene(&["sigma", &d, "--at", "1,2,3,5"]).out, "10\n");
    assert_eq!(
        greene(&["sigma", &d, "--method", "planar", "--at", "1,2,3,5"]).out,
        "10\n"
    );
    assert_eq!(
        greene(&["reduce", &d, "--beta", "0", "--at", "1,2,3,5"]).out,
        "-1/3\n"
    );
    assert_eq!(
        greene(&["reduce", &d, "--beta", "-1", "--at", "1,2,3,5"]).out,
        "10\n"
    );
}

#[test]
fn verify_diamond_agrees() {
    let dir = TempDir::new().unwrap();
    let d = file(&dir, "diamond.poset", DIAMOND);
    let r = greene(&["verify", &d, "--bound", "2"]);
    assert_eq!(r.code, 0, "{}{}", r.out, r.err);
    let lines: Vec<&str> = r.out.lines().collect();
    assert!(lines[0].starts_with("psi"));
    for m in ["oracle", "general", "planar", "reduction"] {
        assert!(lines[0].contains(m));
    }
    // Header plus four rows of four entries.
    assert_eq!(
        lines[1..5]
            .iter()
            .filter(|l| l.matches('=').count() == 4)
            .count(),
        4
    );
    assert!(r.out.contains("0 mismatches"));
    assert_eq!(*lines.last().unwrap(), "agree");
}

#[test]
fn broken_poset_exits_with_input_error() {
    let dir = TempDir::new().unwrap();
    let b = file(&dir, "broken.poset", "poset\nn 2\ncovers\n2 1\n");
    let r = greene(&["psi", &b]);
    assert_eq!(r.code, 2);
    assert!(r.err.starts_with("error: NotNaturallyLabeled"), "{}", r.err);
    assert!(r.out.is_empty());
}

#[test]
fn unknown_flag_is_rejected() {
    let dir = TempDir::new().unwrap();
    let d = file(&dir, "diamond.poset", DIAMOND);
    assert_eq!(greene(&["psi", &d, "--frobnicate"]).code, 2);
    assert_eq!(greene(&["psi", &d, "--method", "magic"]).code, 2);
    assert_eq!(greene(&["reduce", &d, "--beta", "3"]).code, 2);
}

#[test]
fn missing_file_is_an_input_error() {
    let r = greene(&["psi", "/nonexistent/x.poset"]);
    assert_eq!(r.code, 2);
    assert!(r.err.starts_with("error: "));
}

#[test]
fn reduce_dumps_canonical_terms() {
    let dir = TempDir::new().unwrap();
    let c = file(&dir, "chain.poset", "poset\nn 3\ncovers\n1 2\n2 3\n");
    let r = greene(&["reduce", &c]);
    assert_eq!(
        r.out,
        "1 beta^0 [prefactor: ] edges: 1-2,1-3\n\
         1 beta^0 [prefactor: ] edges: 1-3,2-3\n\
         1 beta^1 [prefactor: ] edges: 1-3\n"
    );
    let d = file(&dir, "diamond.poset", DIAMOND);
    let r = greene(&["reduce", &d, "--strategy", "cycle-random", "--seed", "5"]);
    assert_eq!(r.code, 0);
    assert!(r.out.lines().all(|l| l.contains("[prefactor: 1-4]")));
}

#[test]
fn triangulate_k22_with_orders() {
    let dir = TempDir::new().unwrap();
    let k = file(
        &dir,
        "k22.poset",
        "poset\nn 4\ncovers\n1 3\n1 4\n2 3\n2 4\n",
    );
    let lex = greene(&["triangulate", &k]);
    assert_eq!(lex.code, 0);
    assert_eq!(lex.out.lines().count(), 2);
    let other = greene(&["triangulate", &k, "--order", "2-4,1-3,2-3,1-4"]);
    assert_eq!(other.out.lines().count(), 2);
}

#[test]
fn skew_paths_and_trees_agree() {
    let dir = TempDir::new().unwrap();
    let s = file(&dir, "rect.skew", "skew\nrows 2 3\n1 3\n1 3\n");
    let paths = greene(&["paths", &s]);
    let trees = greene(&["triangulate", &s]);
    assert_eq!(paths.code, 0);
    assert_eq!(paths.out.lines().count(), 3);
    assert_eq!(trees.out.lines().count(), 3);
    assert!(paths.out.lines().any(|l| l == "1,1 1,2 1,3 2,3"));
    assert!(paths.out.lines().any(|l| l == "1,1 2,1 2,2 2,3"));
    let v = greene(&["verify", &s]);
    assert_eq!(v.code, 0, "{}", v.out);
    assert!(v.out.contains("bflr"));
    let p = file(&dir, "diamond.poset", DIAMOND);
    assert_eq!(greene(&["paths", &p]).code, 2);
}

#[test]
fn notch_identities_hold() {
    let dir = TempDir::new().unwrap();
    let v = file(&dir, "vee.poset", "poset\nn 3\ncovers\n1 2\n1 3\n");
    let r = greene(&["notch", &v]);
    assert_eq!(r.code, 0);
    assert_eq!(r.out, "V a=1 b=2 c=3: psi ok, sigma ok\n");
}

#[test]
fn corpus_is_reproducible() {
    let a = greene(&["corpus", "--seed", "1", "--n-max", "4", "--count", "3"]);
    let b = greene(&["corpus", "--seed", "1", "--n-max", "4", "--count", "3"]);
    let c = greene(&["corpus", "--seed", "2", "--n-max", "4", "--count", "3"]);
    assert_eq!(a.out, b.out);
    assert_ne!(a.out, c.out);
    assert_eq!(a.out.matches("poset\n").count(), 3);

    let dir = TempDir::new().unwrap();
    let out = dir.path().join("corpus");
    let r = greene(&[
        "corpus",
        "--seed",
        "1",
        "--n-max",
        "4",
        "--count",
        "3",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(r.code, 0);
    let mut names: Vec<String> = fs::read_dir(&out)
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    names.sort();
    assert_eq!(names, ["poset_1.poset", "poset_2.poset", "poset_3.poset"]);
    for n in &names {
        let psi = greene(&["psi", out.join(n).to_str().unwrap()]);
        assert_eq!(psi.code, 0, "{}", psi.err);
    }
    assert_eq!(greene(&["corpus", "--n-max", "12"]).code, 2);
}

#[test]
fn dot_export() {
    let dir = TempDir::new().unwrap();
    let c = file(&dir, "chain.poset", "poset\nn 2\ncovers\n1 2\n");
    assert_eq!(
        greene(&["export-dot", &c]).out,
        "digraph {\n  1;\n  2;\n  1 -> 2;\n}\n"
    );
    let d = file(&dir, "diamond.poset", DIAMOND);
    let trees = greene(&["export-dot", &d, "--trees"]).out;
    assert!(trees.contains("subgraph cluster_1"));
}

#[test]
fn help_goes_to_stdout() {
    let r = greene(&["--help"]);
    assert_eq!(r.code, 0);
    assert!(r.out.contains("verify"));
}
