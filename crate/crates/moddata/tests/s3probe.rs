use moddata::cli::{assemble_case, load_case_file};
use moddata::exactpoly::MonomialOrder;
use moddata::groebner::{buchberger, Budget, Ideal};
use std::path::Path;

#[test]
fn s3_first_groebner() {
    let file = load_case_file(&Path::new(env!("CARGO_MANIFEST_DIR")).join("../../suites/nsd1/g01/s3.toml")).unwrap();
    // adjust path relative to manifest
    let case = assemble_case(&file).unwrap();
    eprintln!("vars: {:?}", case.vars.names());
    eprintln!("relations: {}", case.relations.len());
    let t0 = std::time::Instant::now();
    let ideal = Ideal::new(
        case.relations.iter().map(|(_, p)| p.clone()).collect(),
        MonomialOrder::GradedRevLex,
    );
    let gb = buchberger(&ideal, Some(4), &Budget { max_pairs: 200_000, max_millis: 240_000 }).unwrap();
    for e in &gb.elements { if e.degree().unwrap_or(99) <= 3 && e.terms().len() <= 4 { eprintln!("  short: {e}"); } }
    eprintln!(
        "gb elements {} pairs {} maxdeg {} in {:?}",
        gb.elements.len(),
        gb.pairs_processed,
        gb.max_degree,
        t0.elapsed()
    );
}
