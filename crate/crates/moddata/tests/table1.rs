use moddata::cli::{assemble_case, load_case_file};
use moddata::engine::{run_case, Outcome};
use moddata::exactpoly::parse_poly;
use moddata::groebner::{buchberger, membership_partial, Budget, Ideal};
use moddata::exactpoly::MonomialOrder;
use std::path::Path;

fn suite(p: &str) -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../suites").join(p)
}

#[test]
fn s1_empty_variety() {
    let file = load_case_file(&suite("nsd2/g01/s1.toml")).unwrap();
    let case = assemble_case(&file).unwrap();
    let tree = run_case(&case, &file.budget.to_case_budget());
    eprintln!("{}", tree.render_text());
    assert!(tree.all_contradicted());
}

#[test]
fn s2_first_run_pd() {
    let file = load_case_file(&suite("nsd1/g01/s2.toml")).unwrap();
    let case = assemble_case(&file).unwrap();

    // membership of p*D in the first ideal, checked directly
    let ideal = Ideal::new(
        case.relations.iter().map(|(_, p)| p.clone()).collect(),
        MonomialOrder::GradedRevLex,
    );
    let gb = buchberger(&ideal, None, &Budget::default()).unwrap();
    let pd = parse_poly("p*D", &case.vars).unwrap();
    assert_eq!(membership_partial(&pd, &gb), Some(true), "p*D in the first ideal");

    // and the engine reaches the same contradiction on its own
    let tree = run_case(&case, &file.budget.to_case_budget());
    eprintln!("{}", tree.render_text());
    assert!(tree.all_contradicted());
    let leaf = tree.nodes.iter().find(|n| n.outcome.is_some()).unwrap();
    match leaf.outcome.as_ref().unwrap() {
        Outcome::Contradiction { witness, .. } => {
            assert!(witness.contains('p') && witness.contains('D'), "witness: {witness}");
        }
        other => panic!("expected contradiction, got {other:?}"),
    }
}

#[test]
fn s3_with_hints_reaches_d() {
    let file = load_case_file(&suite("nsd1/g01/s3.toml")).unwrap();
    let case = assemble_case(&file).unwrap();
    let tree = run_case(&case, &file.budget.to_case_budget());
    eprintln!("{}", tree.render_text());
    assert!(tree.all_contradicted(), "{}", tree.render_text());
}
