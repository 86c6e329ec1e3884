use floorpoly_core::assembly::{leading_terms, node_polynomial};
use floorpoly_core::floor::severi_degree_enum;
use floorpoly_core::poly::{parse_poly, rat, MultiPoly, Var};
use floorpoly_core::seq::{tangency_pairs, TangencySequence};

#[test]
fn no_variables_beyond_delta() {
    for delta in 0..=3 {
        let n = node_polynomial(delta).unwrap();
        assert!(n.poly.max_index() as usize <= delta, "delta = {delta}");
        assert_eq!(n.poly.total_degree() as usize, 3 * delta);
    }
}

#[test]
fn high_tangency_orders_agree_with_enumeration() {
    let cases: &[(usize, &[u64], &[u64])] = &[
        (1, &[], &[1, 1]),
        (1, &[0, 1], &[1]),
        (1, &[], &[0, 0, 1, 0]),
        (2, &[], &[1, 0, 1]),
        (2, &[0, 0, 1], &[2]),
        (2, &[1], &[1, 0, 0, 1]),
        (3, &[], &[2, 0, 0, 1]),
    ];
    for &(delta, a, b) in cases {
        let (alpha, beta) = (TangencySequence::new(a.to_vec()), TangencySequence::new(b.to_vec()));
        if beta.norm() < delta as u64 {
            continue;
        }
        let n = node_polynomial(delta).unwrap();
        assert_eq!(n.evaluate(&alpha, &beta).unwrap(), severi_degree_enum(delta, &alpha, &beta).unwrap());
    }
}

#[test]
fn dual_path_small_grid() {
    for delta in 0..=2 {
        let n = node_polynomial(delta).unwrap();
        for d in 1..=5 {
            for (alpha, beta) in tangency_pairs(d) {
                if beta.norm() < delta as u64 {
                    continue;
                }
                assert_eq!(
                    n.evaluate(&alpha, &beta).unwrap(),
                    severi_degree_enum(delta, &alpha, &beta).unwrap(),
                    "delta = {delta}, {alpha} {beta}"
                );
            }
        }
    }
}

/// alpha = 0, beta = (d): the classical node polynomial times d(d-1)...(d-delta+1).
fn non_relative(p: &MultiPoly) -> MultiPoly {
    let d = MultiPoly::var(Var::D);
    let mut q = p.substitute(Var::S, &d).substitute(Var::B(1), &d);
    for v in q.variables() {
        if matches!(v, Var::A(_) | Var::B(_)) {
            q = q.substitute_value(v, &rat(0));
        }
    }
    q
}

#[test]
fn non_relative_specialization() {
    let n1 = non_relative(&node_polynomial(1).unwrap().poly);
    assert_eq!(n1, parse_poly("3 D^3 - 6 D^2 + 3 D").unwrap());
    for delta in 2..=3 {
        let q = non_relative(&node_polynomial(delta).unwrap().poly);
        for root in 0..delta as i64 {
            assert!(q.substitute_value(Var::D, &rat(root)).is_zero(), "delta = {delta}, D = {root}");
        }
    }
}

#[test]
fn leading_terms_truncate_node_polynomial() {
    for delta in 1..=3 {
        let n = node_polynomial(delta).unwrap().poly;
        for t in 0..=2 {
            assert_eq!(leading_terms(delta, t).unwrap(), n.truncate_below((3 * delta - t) as u32), "{delta} {t}");
        }
    }
}
