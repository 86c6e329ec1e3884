use floorpoly_core::template::{edge_cost, enumerate_templates, Template};

/// Templates of cogenus delta from multiplicity vectors over all admissible
/// edges, filtered for covering.
fn brute_force(delta: usize) -> Vec<Template> {
    let mut out = Vec::new();
    for l in 1..=delta + 1 {
        let mut edges = Vec::new();
        for i in 0..l {
            for j in i + 1..=l {
                for w in 1..=delta as u32 + 1 {
                    let c = edge_cost(&(i, j, w));
                    if c >= 1 && c <= delta {
                        edges.push((i, j, w));
                    }
                }
            }
        }
        let mut mult = vec![0usize; edges.len()];
        choose(&edges, 0, delta, &mut mult, &mut |mult| {
            let chosen: Vec<_> = mult
                .iter()
                .zip(&edges)
                .flat_map(|(&m, &e)| std::iter::repeat_n(e, m))
                .collect();
            if (1..l).all(|v| chosen.iter().any(|e| e.0 < v && v < e.1)) {
                out.push(Template::new(l, chosen).unwrap());
            }
        });
    }
    out.sort();
    out
}

/// Every multiplicity vector with total cost exactly `left`.
fn choose(edges: &[(usize, usize, u32)], x: usize, left: usize, mult: &mut [usize], f: &mut dyn FnMut(&[usize])) {
    if x == edges.len() {
        if left == 0 {
            f(mult);
        }
        return;
    }
    let c = edge_cost(&edges[x]);
    for m in 0..=left / c {
        mult[x] = m;
        choose(edges, x + 1, left - m * c, mult, f);
    }
    mult[x] = 0;
}

#[test]
fn generator_agrees_with_brute_force() {
    for delta in 1..=3 {
        assert_eq!(enumerate_templates(delta), brute_force(delta), "delta = {delta}");
    }
}

#[test]
fn generator_is_canonical() {
    let t = enumerate_templates(3);
    assert!(t.windows(2).all(|w| w[0] < w[1]));
    assert!(t.iter().all(|t| t.cogenus() == 3));
}
