use moddata::symmetry::{relabel_equivalent, DualityInvolution, GroupCandidate, Permutation};
use moddata::verify::*;

#[test]
fn whole_library_admissible() {
    let ctx = NumCtx::default_50_digits();
    for entry in known_library() {
        let md = entry.to_numeric(&ctx);
        let report = verify_admissibility(&md, &ctx, 1e-9);
        assert!(report.all_passed(), "{} fails:\n{}", entry.name, report.render());
    }
}

fn group_of(md: &ModularDataExact) -> GroupCandidate {
    let perms = md.galois_group().unwrap();
    let r = md.rank();
    let gens: Vec<Permutation> = perms.into_iter().filter(|p| !p.is_identity()).collect();
    GroupCandidate::new(gens, DualityInvolution::identity(r)).unwrap()
}

#[test]
fn product_galois_groups() {
    let semion = library_entry("Semion").unwrap();
    let ising = library_entry("Ising").unwrap();
    let fib = library_entry("Fibonacci").unwrap();
    let a15 = library_entry("(A1,5)1/2").unwrap();

    let expect = |gens: &[&str]| {
        let perms: Vec<Permutation> = gens
            .iter()
            .map(|s| Permutation::parse_cycles(s, 6).unwrap())
            .collect();
        GroupCandidate::new(perms, DualityInvolution::identity(6)).unwrap()
    };

    let cases = vec![
        (semion.tensor(&ising), expect(&["(01)(23)"]), "Semion x Ising"),
        (
            semion.tensor(&a15),
            expect(&["(012)(345)"]),
            "Semion x (A1,5)1/2",
        ),
        (
            fib.tensor(&ising),
            expect(&["(01)(23)(45)", "(02)(13)"]),
            "Fibonacci x Ising",
        ),
        (
            fib.tensor(&a15),
            expect(&["(012345)"]),
            "Fibonacci x (A1,5)1/2",
        ),
    ];
    for (product, expected, name) in cases {
        let got = group_of(&product);
        assert_eq!(got.order(), expected.order(), "{name}: group order");
        assert!(
            relabel_equivalent(&got, &expected).is_some(),
            "{name}: detected group {:?} not equivalent to expected {:?}",
            got.generator_strings(),
            expected.generator_strings()
        );
    }
}

#[test]
fn tensor_admissible_and_unit() {
    let ctx = NumCtx::default_50_digits();
    let fib = library_entry("Fibonacci").unwrap();
    let z3 = library_entry("Z3").unwrap();
    let prod = fib.tensor(&z3);
    let md = prod.to_numeric(&ctx);
    let report = verify_admissibility(&md, &ctx, 1e-9);
    assert!(report.all_passed(), "{}", report.render());

    // unit of the product
    let trivial = library_entry("Trivial").unwrap();
    let back = fib.tensor(&trivial);
    assert_eq!(back.s, fib.s.iter().map(|row| row.iter().map(|e| e.lift(5)).collect::<Vec<_>>()).collect::<Vec<_>>());
}
