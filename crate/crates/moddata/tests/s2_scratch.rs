use moddata::exactpoly::{parse_poly, MonomialOrder, MultiPoly, VarTable};
use moddata::groebner::{buchberger, membership_partial, Budget, Ideal};

// Large smoke computation: rank-6 case with one pair of dual labels, the
// first ideal being orthogonality + twist relations. Expects p*D to be a
// member of the ideal.
#[test]
fn s2_first_run() {
    let vars = VarTable::new(vec![
        "D", "d1", "d2", "d3", "d4", "a1", "a2", "a3", "b1", "b2", "p", "t2", "t3", "t4", "e",
    ]);
    let s: Vec<Vec<&str>> = vec![
        vec!["1", "d1", "d2", "d3", "d4", "d4"],
        vec!["d1", "1", "e*d2", "e*d3", "0-e*d4", "0-e*d4"],
        vec!["d2", "e*d2", "a1", "a2", "0", "0"],
        vec!["d3", "e*d3", "a2", "a3", "0", "0"],
        vec!["d4", "0-e*d4", "0", "0", "b1", "b2"],
        vec!["d4", "0-e*d4", "0", "0", "b2", "b1"],
    ];
    let star = [0usize, 1, 2, 3, 5, 4];
    let t = ["1", "1", "t2", "t3", "t4", "t4"];

    let sp: Vec<Vec<MultiPoly>> = s
        .iter()
        .map(|row| row.iter().map(|e| parse_poly(e, &vars).unwrap()).collect())
        .collect();
    let tp: Vec<MultiPoly> = t.iter().map(|e| parse_poly(e, &vars).unwrap()).collect();
    let dsym = parse_poly("D", &vars).unwrap();
    let psym = parse_poly("p", &vars).unwrap();

    let mut gens: Vec<MultiPoly> = Vec::new();
    // orthogonality: sum_k S_ik * S_[j* k] - delta_ij D
    for i in 0..6 {
        for j in 0..6 {
            let mut acc = MultiPoly::zero(&vars);
            for k in 0..6 {
                acc = acc.add(&sp[i][k].mul(&sp[star[j]][k]));
            }
            if i == j {
                acc = acc.sub(&dsym);
            }
            if !acc.is_zero() {
                gens.push(acc);
            }
        }
    }
    // twist: p*S_ij - t_i t_j sum_k S_ik S_kj t_k
    for i in 0..6 {
        for j in 0..6 {
            let mut acc = MultiPoly::zero(&vars);
            for k in 0..6 {
                acc = acc.add(&sp[i][k].mul(&sp[k][j]).mul(&tp[k]));
            }
            let lhs = psym.mul(&sp[i][j]);
            let rhs = tp[i].mul(&tp[j]).mul(&acc);
            let rel = lhs.sub(&rhs);
            if !rel.is_zero() {
                gens.push(rel);
            }
        }
    }
    gens.push(parse_poly("e^2-1", &vars).unwrap());
    gens.push(parse_poly("t4^2+1", &vars).unwrap());

    let ideal = Ideal::new(gens, MonomialOrder::GradedRevLex);
    eprintln!("generators: {}", ideal.generators.len());
    let start = std::time::Instant::now();
    let gb = buchberger(&ideal, None, &Budget::default()).unwrap();
    eprintln!(
        "gb: {} elements, {} pairs, max degree {}, {:?}",
        gb.elements.len(),
        gb.pairs_processed,
        gb.max_degree,
        start.elapsed()
    );
    let pd = parse_poly("p*D", &vars).unwrap();
    assert_eq!(membership_partial(&pd, &gb), Some(true));
}
