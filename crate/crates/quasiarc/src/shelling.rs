//! Shelling orders: verifiers, combinators and a brute-force finder.
//!
//! An ordering `C_1, C_2, ...` of facets is a shelling when each
//! `B_k = (C_1 ∪ ... ∪ C_{k-1}) ∩ C_k` is pure of dimension
//! `dim(C_k) - 1`. For facet families of a surface this is equivalent to
//! the mutation form: for all `k` and `j < k` there is an `i < k` with
//! `|T_i ∩ T_k| = rank - 1` and `T_j ∩ T_k ⊆ T_i ∩ T_k`. Both verifiers
//! evaluate full orders only; no prefix property is assumed.

use std::collections::HashSet;

use crate::complex::Facet;
use crate::error::{Error, Result};
use crate::surface::{bits, Census, QuasiArc, Surface};

/// An ordered facet list with per-facet block provenance labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShellingOrder {
    pub surface: Surface,
    facets: Vec<Facet>,
    provenance: Vec<String>,
}

impl ShellingOrder {
    pub fn new(surface: Surface, facets: Vec<Facet>, provenance: Vec<String>) -> Self {
        assert_eq!(facets.len(), provenance.len());
        ShellingOrder { surface, facets, provenance }
    }

    pub fn from_facets(surface: Surface, facets: Vec<Facet>) -> Self {
        let provenance = vec![String::new(); facets.len()];
        ShellingOrder { surface, facets, provenance }
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn provenance(&self) -> &[String] {
        &self.provenance
    }

    pub fn len(&self) -> usize {
        self.facets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    /// Prefix every provenance label with a block tag.
    pub fn tag(mut self, label: &str) -> Self {
        for p in &mut self.provenance {
            *p = if p.is_empty() {
                label.to_string()
            } else {
                format!("{label}/{p}")
            };
        }
        self
    }

    /// Apply an arc transformation to every facet.
    pub fn map_arcs(&self, f: impl Fn(&QuasiArc) -> QuasiArc) -> Self {
        let facets = self
            .facets
            .iter()
            .map(|ft| Facet::new(ft.arcs().iter().map(&f).collect()))
            .collect();
        ShellingOrder {
            surface: self.surface,
            facets,
            provenance: self.provenance.clone(),
        }
    }

    fn masks(&self) -> Result<Vec<u128>> {
        let census = Census::new(self.surface)?;
        self.facets
            .iter()
            .map(|f| census.mask_of(f.arcs()))
            .collect()
    }
}

/// What went wrong at position `k` of the topological verification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Defect {
    /// `B_k` has no face of positive dimension although the facet does.
    Emptiness,
    /// The top faces of `B_k` are too small.
    WrongDimension,
    /// Some face of `B_k` is not below a codimension-one face.
    Impurity,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TopoVerdict {
    Ok,
    /// 1-based position of the first offending facet.
    Failure { k: usize, defect: Defect },
}

impl TopoVerdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, TopoVerdict::Ok)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MutationVerdict {
    Ok,
    /// 1-based positions: facet `k` has no earlier mutation neighbour
    /// covering its intersection with facet `j`.
    Failure { k: usize, j: usize },
}

impl MutationVerdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, MutationVerdict::Ok)
    }
}

/// Topological form: every `B_k` is pure of dimension `dim(C_k) - 1`.
pub fn verify_shelling_topological(order: &ShellingOrder) -> Result<TopoVerdict> {
    let masks = order.masks()?;
    check_duplicates(&masks, &order.facets)?;
    Ok(verify_topological_masks(&masks))
}

/// Mask-level topological verifier (also used on artificial complexes).
pub fn verify_topological_masks(masks: &[u128]) -> TopoVerdict {
    for k in 1..masks.len() {
        let ck = masks[k];
        let target = ck.count_ones().saturating_sub(1);
        let mut inters: Vec<u128> = masks[..k].iter().map(|m| m & ck).collect();
        inters.sort_unstable();
        inters.dedup();
        let max_size = inters.iter().map(|m| m.count_ones()).max().unwrap_or(0);
        if max_size < target {
            let defect = if max_size == 0 {
                Defect::Emptiness
            } else {
                Defect::WrongDimension
            };
            return TopoVerdict::Failure { k: k + 1, defect };
        }
        let tops: Vec<u128> = inters
            .iter()
            .copied()
            .filter(|m| m.count_ones() == target)
            .collect();
        for &inter in &inters {
            if !tops.iter().any(|t| inter & !t == 0) {
                return TopoVerdict::Failure { k: k + 1, defect: Defect::Impurity };
            }
        }
    }
    TopoVerdict::Ok
}

/// Mutation form: for all `k` and `j < k` some earlier facet at
/// intersection size `rank - 1` covers `T_j ∩ T_k`.
pub fn verify_shelling_mutation(order: &ShellingOrder) -> Result<MutationVerdict> {
    let masks = order.masks()?;
    check_duplicates(&masks, &order.facets)?;
    if let Some(first) = masks.first() {
        let r = first.count_ones();
        if masks.iter().any(|m| m.count_ones() != r) {
            return Err(Error::WrongFamily(
                "mutation verifier needs a pure facet family".into(),
            ));
        }
    }
    Ok(verify_mutation_masks(&masks))
}

/// Mask-level mutation verifier.
pub fn verify_mutation_masks(masks: &[u128]) -> MutationVerdict {
    for k in 1..masks.len() {
        let ck = masks[k];
        // Arcs of C_k missed by an earlier facet at codimension one.
        let mut missing_union = 0u128;
        for &ti in &masks[..k] {
            let d = ck & !ti;
            if d.count_ones() == 1 {
                missing_union |= d;
            }
        }
        if missing_union == 0 {
            return MutationVerdict::Failure { k: k + 1, j: 1 };
        }
        for (j, &tj) in masks[..k].iter().enumerate() {
            // Need some missing arc absent from T_j.
            if missing_union & !tj == 0 {
                return MutationVerdict::Failure { k: k + 1, j: j + 1 };
            }
        }
    }
    MutationVerdict::Ok
}

fn check_duplicates(masks: &[u128], facets: &[Facet]) -> Result<()> {
    let mut seen = HashSet::new();
    for (m, f) in masks.iter().zip(facets) {
        if !seen.insert(*m) {
            return Err(Error::DuplicateFacet(f.to_string()));
        }
    }
    Ok(())
}

/// Upper (lower) shellings: within a block family ordered by `order`,
/// every length-increasing (length-decreasing) mutable arc's flip partner
/// must appear strictly earlier.
///
/// An arc is family-mutable when replacing it yields another facet of the
/// family. `length` must assign a length to every arc of the family.
pub fn is_upper_shelling(
    order: &ShellingOrder,
    length: &dyn Fn(&QuasiArc) -> Option<usize>,
) -> Result<bool> {
    directional_shelling(order, length, true)
}

pub fn is_lower_shelling(
    order: &ShellingOrder,
    length: &dyn Fn(&QuasiArc) -> Option<usize>,
) -> Result<bool> {
    directional_shelling(order, length, false)
}

fn directional_shelling(
    order: &ShellingOrder,
    length: &dyn Fn(&QuasiArc) -> Option<usize>,
    upper: bool,
) -> Result<bool> {
    let masks = order.masks()?;
    check_duplicates(&masks, &order.facets)?;
    let census = Census::new(order.surface)?;
    for (k, &m) in masks.iter().enumerate() {
        for i in bits(m) {
            // Family-mutable: some other family facet shares all but arc i.
            let ridge = m & !(1u128 << i);
            let partner = masks
                .iter()
                .enumerate()
                .find(|&(_, &t)| t != m && t & ridge == ridge);
            let Some((p, &t)) = partner else { continue };
            let new_arc_idx = bits(t & !ridge).next().expect("partner differs");
            let old = length(&census.arcs()[i]).ok_or_else(|| {
                Error::WrongFamily(format!("no length for arc {}", census.arcs()[i]))
            })?;
            let new = length(&census.arcs()[new_arc_idx]).ok_or_else(|| {
                Error::WrongFamily(format!(
                    "no length for arc {}",
                    census.arcs()[new_arc_idx]
                ))
            })?;
            let directional = if upper { new > old } else { new < old };
            if directional && p >= k {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Lexicographic product order on two blocks over disjoint ground sets:
/// the first order is the major key and facets are merged by union.
pub fn product_order(a: &ShellingOrder, b: &ShellingOrder) -> Result<ShellingOrder> {
    let ground_a: HashSet<QuasiArc> = a.facets.iter().flat_map(|f| f.arcs().iter().copied()).collect();
    let ground_b: HashSet<QuasiArc> = b.facets.iter().flat_map(|f| f.arcs().iter().copied()).collect();
    if let Some(shared) = ground_a.intersection(&ground_b).next() {
        return Err(Error::GroundOverlap(shared.to_string()));
    }
    let mut facets = Vec::with_capacity(a.len() * b.len());
    let mut provenance = Vec::with_capacity(a.len() * b.len());
    for (fa, pa) in a.facets.iter().zip(&a.provenance) {
        for (fb, pb) in b.facets.iter().zip(&b.provenance) {
            let mut arcs = fa.arcs().to_vec();
            arcs.extend_from_slice(fb.arcs());
            facets.push(Facet::new(arcs));
            provenance.push(join_prov(pa, pb));
        }
    }
    Ok(ShellingOrder { surface: a.surface, facets, provenance })
}

fn join_prov(a: &str, b: &str) -> String {
    match (a.is_empty(), b.is_empty()) {
        (true, true) => String::new(),
        (true, false) => b.to_string(),
        (false, true) => a.to_string(),
        (false, false) => format!("{a}*{b}"),
    }
}

/// Cone: add a fixed arc to every facet, preserving the order.
pub fn cone(order: &ShellingOrder, apex: QuasiArc) -> Result<ShellingOrder> {
    for f in &order.facets {
        if f.contains(&apex) {
            return Err(Error::GroundOverlap(apex.to_string()));
        }
    }
    let facets = order
        .facets
        .iter()
        .map(|f| {
            let mut arcs = f.arcs().to_vec();
            arcs.push(apex);
            Facet::new(arcs)
        })
        .collect();
    Ok(ShellingOrder {
        surface: order.surface,
        facets,
        provenance: order.provenance.clone(),
    })
}

/// Concatenate block orders, preserving block order.
pub fn concat(orders: Vec<ShellingOrder>) -> ShellingOrder {
    let surface = orders.first().expect("concat of at least one order").surface;
    let mut facets = Vec::new();
    let mut provenance = Vec::new();
    for o in orders {
        facets.extend(o.facets);
        provenance.extend(o.provenance);
    }
    ShellingOrder { surface, facets, provenance }
}

/// Default cap for the brute-force shelling search.
pub const BRUTE_FORCE_CAP: usize = 12;

/// Backtracking search for a shelling order of the given facets, pruning
/// with the mutation-form check. Returns a witness order of indices, or
/// `None` if no shelling exists.
pub fn brute_force_shelling_masks(masks: &[u128], cap: usize) -> Result<Option<Vec<usize>>> {
    if masks.len() > cap {
        return Err(Error::CapExceeded(format!(
            "brute-force shelling over {} facets exceeds the cap {}",
            masks.len(),
            cap
        )));
    }
    let mut chosen: Vec<usize> = Vec::new();
    let mut used = vec![false; masks.len()];
    if backtrack(masks, &mut chosen, &mut used) {
        Ok(Some(chosen))
    } else {
        Ok(None)
    }
}

fn backtrack(masks: &[u128], chosen: &mut Vec<usize>, used: &mut [bool]) -> bool {
    if chosen.len() == masks.len() {
        return true;
    }
    for c in 0..masks.len() {
        if used[c] {
            continue;
        }
        if prefix_ok(masks, chosen, masks[c]) {
            chosen.push(c);
            used[c] = true;
            if backtrack(masks, chosen, used) {
                return true;
            }
            used[c] = false;
            chosen.pop();
        }
    }
    false
}

fn prefix_ok(masks: &[u128], chosen: &[usize], ck: u128) -> bool {
    if chosen.is_empty() {
        return true;
    }
    let mut missing_union = 0u128;
    for &i in chosen {
        let d = ck & !masks[i];
        if d.count_ones() == 1 {
            missing_union |= d;
        }
    }
    if missing_union == 0 {
        return false;
    }
    chosen.iter().all(|&j| missing_union & !masks[j] != 0)
}

/// Brute-force search over a complex's facets, as `ShellingOrder`.
pub fn brute_force_shelling(
    complex: &crate::complex::Complex,
    cap: usize,
) -> Result<Option<ShellingOrder>> {
    let masks = complex.facet_masks();
    let Some(perm) = brute_force_shelling_masks(masks, cap)? else {
        return Ok(None);
    };
    let facets = complex.facets();
    let ordered: Vec<Facet> = perm.iter().map(|&i| facets[i].clone()).collect();
    Ok(Some(ShellingOrder::from_facets(*complex.surface(), ordered)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Complex;

    fn facet(arcs: &[&str]) -> Facet {
        Facet::new(arcs.iter().map(|s| s.parse().unwrap()).collect())
    }

    fn order(surface: &str, facets: &[&[&str]]) -> ShellingOrder {
        ShellingOrder::from_facets(
            surface.parse().unwrap(),
            facets.iter().map(|f| facet(f)).collect(),
        )
    }

    #[test]
    fn single_facet_orders_are_shellings() {
        let o = order("polygon:4", &[&["P(1,3)"]]);
        assert!(verify_shelling_topological(&o).unwrap().is_ok());
        assert!(verify_shelling_mutation(&o).unwrap().is_ok());
    }

    #[test]
    fn zero_sphere_orders_are_shellings() {
        // Both orders of the two vertices of mobius:1 shell: B_2 is the
        // empty face, of dimension -1 = dim(C_2) - 1.
        let variants: [&[&[&str]]; 2] = [&[&["mu"], &["C(1,1)"]], &[&["C(1,1)"], &["mu"]]];
        for fs in variants {
            let o = order("mobius:1", fs);
            assert!(verify_shelling_topological(&o).unwrap().is_ok());
            assert!(verify_shelling_mutation(&o).unwrap().is_ok());
        }
    }

    #[test]
    fn hexagon_opposite_edges_first_fails() {
        // mobius:2 is a hexagon; starting with two opposite edges leaves
        // B_2 empty.
        let o = order(
            "mobius:2",
            &[
                &["mu", "P(1,1)"],
                &["C(1,2)", "C(2,2)"],
                &["P(1,1)", "C(1,1)"],
                &["C(1,1)", "C(1,2)"],
                &["C(2,2)", "P(2,2)"],
                &["P(2,2)", "mu"],
            ],
        );
        let td = verify_shelling_topological(&o).unwrap();
        assert_eq!(td, TopoVerdict::Failure { k: 2, defect: Defect::Emptiness });
        let md = verify_shelling_mutation(&o).unwrap();
        assert_eq!(md, MutationVerdict::Failure { k: 2, j: 1 });
    }

    #[test]
    fn hexagon_walk_is_a_shelling() {
        let o = order(
            "mobius:2",
            &[
                &["mu", "P(1,1)"],
                &["P(1,1)", "C(1,1)"],
                &["C(1,1)", "C(1,2)"],
                &["C(1,2)", "C(2,2)"],
                &["C(2,2)", "P(2,2)"],
                &["P(2,2)", "mu"],
            ],
        );
        assert!(verify_shelling_topological(&o).unwrap().is_ok());
        assert!(verify_shelling_mutation(&o).unwrap().is_ok());
    }

    #[test]
    fn verifier_equivalence_on_sampled_orders() {
        // Topological and mutation verdicts agree on every tested order of
        // a pure family.
        let complex = Complex::build("mobius:2".parse().unwrap()).unwrap();
        let facets = complex.facets();
        // All 720 orders of the hexagon facets.
        let mut idx = vec![0, 1, 2, 3, 4, 5];
        permute_all(&mut idx, 0, &mut |perm| {
            let fs: Vec<Facet> = perm.iter().map(|&i| facets[i].clone()).collect();
            let o = ShellingOrder::from_facets(*complex.surface(), fs);
            let t = verify_shelling_topological(&o).unwrap().is_ok();
            let m = verify_shelling_mutation(&o).unwrap().is_ok();
            assert_eq!(t, m, "verdicts disagree on {perm:?}");
        });
    }

    fn permute_all(idx: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == idx.len() {
            f(idx);
            return;
        }
        for i in k..idx.len() {
            idx.swap(k, i);
            permute_all(idx, k + 1, f);
            idx.swap(k, i);
        }
    }

    #[test]
    fn product_of_polygon_shellings_verifies() {
        use crate::construct::shell_polygon;
        // Shift the labels of the second polygon out of the way so the
        // ground sets are disjoint.
        let a = shell_polygon(5, 1).unwrap();
        let b = shell_polygon(4, 1).unwrap().map_arcs(|arc| match arc {
            QuasiArc::Plain(i, j) => QuasiArc::Plain(i + 20, j + 20),
            other => *other,
        });
        let prod = product_order(&a, &b).unwrap();
        assert_eq!(prod.len(), 5 * 2);
        // The union lives on no single surface, so verify at mask level
        // over a synthetic ground set.
        let mut ground: Vec<QuasiArc> = prod
            .facets()
            .iter()
            .flat_map(|f| f.arcs().iter().copied())
            .collect();
        ground.sort();
        ground.dedup();
        let masks: Vec<u128> = prod
            .facets()
            .iter()
            .map(|f| {
                let mut m = 0u128;
                for a in f.arcs() {
                    m |= 1 << ground.binary_search(a).unwrap();
                }
                m
            })
            .collect();
        assert!(verify_topological_masks(&masks).is_ok());
        assert!(verify_mutation_masks(&masks).is_ok());
    }

    #[test]
    fn product_rejects_overlapping_grounds() {
        let a = order("polygon:6", &[&["P(1,3)", "P(1,4)"]]);
        let b = order("polygon:6", &[&["P(1,3)", "P(1,5)"]]);
        assert!(matches!(product_order(&a, &b), Err(Error::GroundOverlap(_))));
    }

    #[test]
    fn brute_force_on_tiny_complexes() {
        // The hexagon has a shelling.
        let complex = Complex::build("mobius:2".parse().unwrap()).unwrap();
        let witness = brute_force_shelling(&complex, BRUTE_FORCE_CAP).unwrap().unwrap();
        assert!(verify_shelling_mutation(&witness).unwrap().is_ok());
        assert!(verify_shelling_topological(&witness).unwrap().is_ok());

        // Two disjoint edges admit none: B_2 is always empty.
        let masks = vec![0b0011u128, 0b1100u128];
        assert_eq!(brute_force_shelling_masks(&masks, 12).unwrap(), None);

        // Cap is enforced.
        let many = vec![0u128; 13];
        assert!(brute_force_shelling_masks(&many, 12).is_err());
    }
}
