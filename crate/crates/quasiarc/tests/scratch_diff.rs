use quasiarc::{QuasiArc, Surface};
use std::collections::BTreeMap;

fn ctris(n: usize) -> Vec<Vec<QuasiArc>> {
    let surface = Surface::mobius(n).unwrap();
    let arcs: Vec<QuasiArc> = surface
        .census()
        .arcs
        .into_iter()
        .filter(|a| a.is_cross())
        .collect();
    let census = quasiarc::Census::from_arcs(surface, arcs).unwrap();
    quasiarc::complex::maximal_cliques(&census)
        .into_iter()
        .map(|m| census.arcs_of(m))
        .collect()
}

fn tri_set(n: usize, f: &[QuasiArc]) -> Vec<usize> {
    let k = n / 2;
    (1..=n)
        .filter(|&v| {
            let a = QuasiArc::cross(v, (v - 1 + k) % n + 1);
            let b = QuasiArc::cross(v, (v + k) % n + 1);
            f.contains(&a) && f.contains(&b)
        })
        .collect()
}

#[test]
fn case_b_regions() {
    // Print the facets of blocks with case-B gaps to reverse the map.
    for (n, target) in [(9usize, vec![1usize, 4, 7]), (9, vec![1, 3, 6]), (7, vec![1, 3, 6]), (9, vec![1, 3, 7]), (11, vec![1, 4, 7])] {
        if n > 11 { continue; }
        let mut found = Vec::new();
        for f in ctris(n) {
            if tri_set(n, &f) == target {
                found.push(f);
            }
        }
        println!("n={n} V={target:?}: {} facets", found.len());
        let k = n / 2;
        let mut base: Vec<QuasiArc> = Vec::new();
        for &v in &target {
            base.push(QuasiArc::cross(v, (v - 1 + k) % n + 1));
            base.push(QuasiArc::cross(v, (v + k) % n + 1));
        }
        base.sort();
        base.dedup();
        for f in &found {
            let fill: Vec<String> = f.iter().filter(|a| !base.contains(a)).map(|a| a.to_string()).collect();
            println!("   fillings: {}", fill.join(" "));
        }
    }
    // Also: bigger capacity case-B example to see ordering structure.
    let n = 11usize;
    let mut groups: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for f in ctris(n) {
        *groups.entry(tri_set(n, &f)).or_insert(0) += 1;
    }
    for (v, c) in groups.iter().filter(|(v, _)| v.len() == 3).take(14) {
        println!("n=11 V={v:?} -> {c}");
    }
}
