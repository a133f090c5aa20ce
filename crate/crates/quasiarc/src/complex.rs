//! The quasi-arc complex: facet enumeration and structural checks.
//!
//! Facets (quasi-triangulations) are enumerated two independent ways,
//! by maximal-clique search over the compatibility graph and by flip
//! closure from a seed, and the two are cross-checked in tests. The
//! structural predicates here are the hypotheses of the sphere criterion:
//! purity, the pseudo-manifold property (every ridge in exactly two
//! facets), and a verified shelling order.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::shelling::{self, ShellingOrder};
use crate::surface::{bits, Census, QuasiArc, Surface};

/// Default cap on the number of faces expanded for an f-vector.
pub const DEFAULT_FACE_CAP: usize = 50_000_000;

/// A facet: a canonically sorted maximal set of pairwise compatible arcs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Facet {
    arcs: Vec<QuasiArc>,
}

impl Facet {
    pub fn new(mut arcs: Vec<QuasiArc>) -> Self {
        arcs.sort();
        arcs.dedup();
        Facet { arcs }
    }

    pub fn arcs(&self) -> &[QuasiArc] {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn contains(&self, arc: &QuasiArc) -> bool {
        self.arcs.binary_search(arc).is_ok()
    }

    /// Image under rotation of the marked points.
    pub fn rotate(&self, s: usize, n: usize) -> Facet {
        Facet::new(self.arcs.iter().map(|a| a.rotate(s, n)).collect())
    }
}

impl std::fmt::Display for Facet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.arcs.iter().map(|a| a.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Face counts `f_{-1} .. f_d` of a complex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FVector {
    /// `counts[k]` is the number of (k-1)-dimensional faces, so
    /// `counts[0] = f_{-1} = 1` for the empty face.
    pub counts: Vec<usize>,
}

impl FVector {
    /// Euler characteristic: alternating sum over non-empty faces.
    pub fn euler_characteristic(&self) -> i64 {
        self.counts
            .iter()
            .skip(1)
            .enumerate()
            .map(|(k, &f)| if k % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }
}

/// Record of the checks backing a PL-sphere conclusion.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SphereCertificate {
    pub surface: String,
    pub dimension: i64,
    pub facet_count: usize,
    pub pure: bool,
    pub pseudomanifold: bool,
    pub shelling_verified: bool,
    pub granted: bool,
    /// First failing position of the order, if verification failed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_index: Option<usize>,
}

/// A quasi-arc complex given by its ground census and facet list.
#[derive(Debug, Clone)]
pub struct Complex {
    census: Census,
    facets: Vec<u128>,
}

impl Complex {
    /// Build the complex of a surface by maximal-clique enumeration.
    ///
    /// The rank is asserted, not inferred: a census or compatibility bug
    /// surfaces as an error here rather than silent acceptance.
    pub fn build(surface: Surface) -> Result<Self> {
        let census = Census::new(surface)?;
        let facets = maximal_cliques(&census);
        let rank = surface.rank();
        for f in &facets {
            if f.count_ones() as usize != rank {
                return Err(Error::WrongFamily(format!(
                    "maximal clique {} has size {}, expected rank {}",
                    Facet::new(census.arcs_of(*f)),
                    f.count_ones(),
                    rank
                )));
            }
        }
        Ok(Complex { census, facets })
    }

    /// Build from an explicit facet list (used for doctored complexes in
    /// tests and for externally supplied orders). No maximality check.
    pub fn from_facets(census: Census, facet_list: &[Facet]) -> Result<Self> {
        let mut facets = Vec::with_capacity(facet_list.len());
        for f in facet_list {
            facets.push(census.mask_of(f.arcs())?);
        }
        facets.sort_by_key(|m| sort_key(*m));
        facets.dedup();
        Ok(Complex { census, facets })
    }

    pub fn census(&self) -> &Census {
        &self.census
    }

    pub fn surface(&self) -> &Surface {
        self.census.surface()
    }

    pub fn facet_masks(&self) -> &[u128] {
        &self.facets
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    pub fn facets(&self) -> Vec<Facet> {
        self.facets
            .iter()
            .map(|m| Facet { arcs: self.census.arcs_of(*m) })
            .collect()
    }

    /// Ground arcs that appear in at least one facet (the whole census,
    /// checked by an invariant test).
    pub fn ground(&self) -> Vec<QuasiArc> {
        self.census.arcs().to_vec()
    }

    pub fn is_pure(&self) -> bool {
        let Some(first) = self.facets.first() else {
            return true;
        };
        let r = first.count_ones();
        self.facets.iter().all(|m| m.count_ones() == r)
    }

    /// Every ridge (codimension-one face of a facet) lies in exactly two
    /// facets.
    pub fn is_pseudomanifold(&self) -> bool {
        if !self.is_pure() {
            return false;
        }
        let mut ridge_deg: HashMap<u128, u32> = HashMap::new();
        for &f in &self.facets {
            for i in bits(f) {
                *ridge_deg.entry(f & !(1u128 << i)).or_insert(0) += 1;
            }
        }
        ridge_deg.values().all(|&d| d == 2)
    }

    /// Face counts by downward closure of the facets.
    pub fn f_vector(&self) -> Result<FVector> {
        self.f_vector_capped(DEFAULT_FACE_CAP)
    }

    pub fn f_vector_capped(&self, cap: usize) -> Result<FVector> {
        let mut faces: HashSet<u128> = HashSet::new();
        for &f in &self.facets {
            expand_faces(f, &mut faces, cap)?;
        }
        let dim = self
            .facets
            .iter()
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0);
        let mut counts = vec![0usize; dim + 1];
        counts[0] = 1;
        for face in faces {
            let k = face.count_ones() as usize;
            if k > 0 {
                counts[k] += 1;
            }
        }
        Ok(FVector { counts })
    }

    pub fn euler_characteristic(&self) -> Result<i64> {
        Ok(self.f_vector()?.euler_characteristic())
    }

    /// Grant a sphere certificate if the complex is pure, a pseudo-manifold,
    /// and the supplied order is a verified shelling of exactly its facets.
    pub fn certify_sphere(&self, order: &ShellingOrder) -> Result<SphereCertificate> {
        let mut order_masks = Vec::with_capacity(order.facets().len());
        for f in order.facets() {
            order_masks.push(self.census.mask_of(f.arcs())?);
        }
        let mut sorted = order_masks.clone();
        sorted.sort_by_key(|m| sort_key(*m));
        sorted.dedup();
        if sorted != self.facets {
            return Err(Error::OrderMismatch(format!(
                "order has {} distinct facets, complex has {}",
                sorted.len(),
                self.facets.len()
            )));
        }
        let pure = self.is_pure();
        let pm = self.is_pseudomanifold();
        let topo = shelling::verify_topological_masks(&order_masks);
        let muta = shelling::verify_mutation_masks(&order_masks);
        let (ok, failing) = match (&topo, &muta) {
            (shelling::TopoVerdict::Ok, shelling::MutationVerdict::Ok) => (true, None),
            (shelling::TopoVerdict::Failure { k, .. }, _) => (false, Some(*k)),
            (_, shelling::MutationVerdict::Failure { k, .. }) => (false, Some(*k)),
        };
        let rank = self.surface().rank() as i64;
        Ok(SphereCertificate {
            surface: self.surface().to_string(),
            dimension: rank - 1,
            facet_count: self.facets.len(),
            pure,
            pseudomanifold: pm,
            shelling_verified: ok,
            granted: pure && pm && ok,
            failing_index: failing,
        })
    }
}

fn expand_faces(facet: u128, faces: &mut HashSet<u128>, cap: usize) -> Result<()> {
    // Enumerate all submasks of the facet.
    let mut sub = facet;
    loop {
        if sub != 0 {
            faces.insert(sub);
            if faces.len() > cap {
                return Err(Error::CapExceeded(format!(
                    "face enumeration exceeded the cap of {cap}"
                )));
            }
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & facet;
    }
    Ok(())
}

/// Lexicographic key on the ascending arc-index sequence of a facet.
pub(crate) fn sort_key(mask: u128) -> Vec<usize> {
    bits(mask).collect()
}

/// All maximal cliques of the compatibility graph, canonically sorted.
pub fn maximal_cliques(census: &Census) -> Vec<u128> {
    let all = if census.len() == 128 {
        u128::MAX
    } else {
        (1u128 << census.len()) - 1
    };
    let mut out = Vec::new();
    bron_kerbosch(census, 0, all, 0, &mut out);
    out.sort_by_key(|m| sort_key(*m));
    out
}

fn bron_kerbosch(census: &Census, r: u128, mut p: u128, mut x: u128, out: &mut Vec<u128>) {
    if p == 0 && x == 0 {
        out.push(r);
        return;
    }
    // Pivot on the candidate with the most neighbours in p.
    let pivot = bits(p | x)
        .max_by_key(|&u| (census.row(u) & p).count_ones())
        .expect("p | x is nonempty");
    let todo = p & !census.row(pivot);
    for v in bits(todo) {
        let vbit = 1u128 << v;
        let nv = census.row(v);
        bron_kerbosch(census, r | vbit, p & nv, x & nv, out);
        p &= !vbit;
        x |= vbit;
    }
}

/// Facet enumeration by breadth-first flip closure from a seed facet.
/// Must agree with clique enumeration as a set.
pub fn facets_by_flip_bfs(surface: Surface, seed: &Facet) -> Result<Vec<Facet>> {
    let census = Census::new(surface)?;
    let seed_mask = census.mask_of(seed.arcs())?;
    validate_facet(&census, seed_mask)?;
    let mut seen: HashSet<u128> = HashSet::from([seed_mask]);
    let mut queue = vec![seed_mask];
    while let Some(f) = queue.pop() {
        for i in bits(f) {
            let (g, _) = crate::flip::flip_mask(&census, f, i)?;
            if seen.insert(g) {
                queue.push(g);
            }
        }
    }
    let mut masks: Vec<u128> = seen.into_iter().collect();
    masks.sort_by_key(|m| sort_key(*m));
    Ok(masks
        .into_iter()
        .map(|m| Facet { arcs: census.arcs_of(m) })
        .collect())
}

/// Check pairwise compatibility and maximality of a candidate facet.
pub(crate) fn validate_facet(census: &Census, mask: u128) -> Result<()> {
    for i in bits(mask) {
        let missing = mask & !census.row(i) & !(1u128 << i);
        if missing != 0 {
            return Err(Error::WrongFamily(format!(
                "arcs {} and {} are incompatible",
                census.arcs()[i],
                census.arcs()[bits(missing).next().unwrap()]
            )));
        }
    }
    let mut extend = !mask;
    for i in bits(mask) {
        extend &= census.row(i);
    }
    if census.len() < 128 {
        extend &= (1u128 << census.len()) - 1;
    }
    if extend != 0 {
        return Err(Error::WrongFamily(format!(
            "facet is not maximal: {} extends it",
            census.arcs()[bits(extend).next().unwrap()]
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complex(s: &str) -> Complex {
        Complex::build(s.parse().unwrap()).unwrap()
    }

    /// Independent triangulation count for an L-gon by dynamic programming
    /// over the apex of the triangle on a fixed base edge.
    pub(crate) fn polygon_count_dp(l: usize) -> u64 {
        let mut t = vec![0u64; l + 1];
        t[2] = 1;
        t[3] = 1;
        for m in 4..=l {
            t[m] = (2..m).map(|a| t[a] * t[m - a + 1]).sum();
        }
        t[l]
    }

    #[test]
    fn polygon_facet_counts_are_catalan() {
        for m in 3..=10 {
            let c = complex(&format!("polygon:{m}"));
            assert_eq!(c.facet_count() as u64, polygon_count_dp(m), "polygon {m}");
        }
        assert_eq!(complex("polygon:5").facet_count(), 5);
    }

    #[test]
    fn cylinder_facet_counts_decompose_by_loops() {
        // Exactly one boundary loop per triangulation: n blocks, each the
        // size of a cut (n+1)-gon count.
        for n in 2..=8 {
            let c = complex(&format!("cylinder:{n}"));
            assert_eq!(
                c.facet_count() as u64,
                n as u64 * polygon_count_dp(n + 1),
                "cylinder {n}"
            );
        }
        assert_eq!(complex("cylinder:1").facet_count(), 1);
    }

    #[test]
    fn tiny_mobius_complexes_by_hand() {
        let m1 = complex("mobius:1");
        let facets = m1.facets();
        assert_eq!(facets.len(), 2);
        assert_eq!(facets[0].arcs(), &[QuasiArc::OneSided]);
        assert_eq!(facets[1].arcs(), &[QuasiArc::Cross(1, 1)]);

        // mobius:2 is a hexagon: six facets forming a 6-cycle.
        let m2 = complex("mobius:2");
        assert_eq!(m2.facet_count(), 6);
        let fv = m2.f_vector().unwrap();
        assert_eq!(fv.counts, vec![1, 6, 6]);
        assert_eq!(fv.euler_characteristic(), 0);
        // Each vertex lies in exactly two edges.
        assert!(m2.is_pseudomanifold());
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(complex("mobius:1").euler_characteristic().unwrap(), 2);
        assert_eq!(complex("mobius:2").euler_characteristic().unwrap(), 0);
        // The complex of the hexagon is a 2-sphere.
        assert_eq!(complex("polygon:6").euler_characteristic().unwrap(), 2);
        for n in 1..=6 {
            let chi = complex(&format!("mobius:{n}"))
                .euler_characteristic()
                .unwrap();
            let expect = 1 + if n % 2 == 1 { 1 } else { -1 };
            assert_eq!(chi, expect, "mobius {n}");
        }
    }

    #[test]
    fn purity_and_pseudomanifold_ranges() {
        for m in 3..=10 {
            let c = complex(&format!("polygon:{m}"));
            assert!(c.is_pure() && c.is_pseudomanifold(), "polygon {m}");
        }
        for n in 1..=7 {
            let c = complex(&format!("mobius:{n}"));
            assert!(c.is_pure() && c.is_pseudomanifold(), "mobius {n}");
            let c = complex(&format!("cylinder:{n}"));
            assert!(c.is_pure() && c.is_pseudomanifold(), "cylinder {n}");
        }
    }

    #[test]
    fn deleting_a_facet_breaks_the_pseudomanifold_property() {
        let c = complex("mobius:3");
        let mut facets = c.facets();
        facets.pop();
        let doctored = Complex::from_facets(Census::new(*c.surface()).unwrap(), &facets).unwrap();
        assert!(!doctored.is_pseudomanifold());
    }

    #[test]
    fn bfs_equals_cliques() {
        for s in ["polygon:4", "polygon:7", "cylinder:3", "cylinder:5", "mobius:2", "mobius:4", "mobius:5"] {
            let c = complex(s);
            let seed = c.facets().into_iter().next().unwrap();
            let by_bfs = facets_by_flip_bfs(*c.surface(), &seed).unwrap();
            assert_eq!(by_bfs, c.facets(), "{s}");
        }
    }

    #[test]
    fn every_ground_arc_appears_in_a_facet() {
        for s in ["polygon:6", "cylinder:4", "mobius:4", "mobius:5"] {
            let c = complex(s);
            for (i, arc) in c.census().arcs().iter().enumerate() {
                assert!(
                    c.facet_masks().iter().any(|m| m & (1u128 << i) != 0),
                    "{arc} missing from every facet of {s}"
                );
            }
        }
    }
}
