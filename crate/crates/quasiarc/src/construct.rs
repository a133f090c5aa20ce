//! Explicit block-structured shelling orders for all three surfaces.
//!
//! Every order here is assembled from blocks: facets are grouped by a
//! distinguishing partial triangulation (a triangle on a base edge, a
//! loop, the endpoint set of the crossing arcs, a set of diagonals or
//! diagonal triangles, a set of maximal-length arcs), blocks are ordered
//! so that escapes always point backwards, and each block is the product
//! of smaller shellings over the regions the partial triangulation cuts
//! out. Regions are relabeled to smaller standard blocks by a positional
//! map that shifts arc lengths by a constant.
//!
//! The constructions are always re-verified by the shelling verifiers in
//! tests; nothing here is trusted.

use crate::complex::Facet;
use crate::error::{Error, Result};
use crate::shelling::{concat, cone, product_order, ShellingOrder};
use crate::surface::{is_diagonal, QuasiArc, Surface, SurfaceKind};

/// The two halves of a one-diagonal block, separated by arc length.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Half {
    X1,
    X2,
}

impl std::fmt::Display for Half {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Half::X1 => write!(f, "X1"),
            Half::X2 => write!(f, "X2"),
        }
    }
}

/// 1-based residue of `x` modulo `n`.
fn kpt(x: i64, n: usize) -> usize {
    (x - 1).rem_euclid(n as i64) as usize + 1
}

fn unit_order(surface: Surface) -> ShellingOrder {
    ShellingOrder::from_facets(surface, vec![Facet::new(vec![])])
}

/// All size-`r` subsets of `items`, lexicographic.
fn combinations(items: &[usize], r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(items: &[usize], r: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            rec(items, r, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(items, r, 0, &mut cur, &mut out);
    out
}

// ---------------------------------------------------------------------
// Polygon and cylinder.
// ---------------------------------------------------------------------

/// Recursive block order for a polygon given as a ring of vertex slots.
/// The base edge is `(ring[0], ring[1])`; the block of apex `ring[t]`
/// contains the triangle on the base edge with that apex, apexes run
/// backwards along the boundary, and each block is the product of the
/// orders of the two sub-polygons. Chords are emitted as slot pairs;
/// `adjacent` marks slot pairs that are boundary edges rather than
/// chords.
fn shell_ring(
    ring: &[usize],
    adjacent: &dyn Fn(usize, usize) -> bool,
) -> Vec<(Vec<(usize, usize)>, String)> {
    if ring.len() <= 3 {
        return vec![(Vec::new(), String::new())];
    }
    let mut out = Vec::new();
    for t in (2..ring.len()).rev() {
        let apex = ring[t];
        let mut fixed = Vec::new();
        for (u, v) in [(ring[1], apex), (apex, ring[0])] {
            if !adjacent(u, v) {
                fixed.push((u.min(v), u.max(v)));
            }
        }
        let sub_a: Vec<usize> = std::iter::once(apex)
            .chain(ring[1..t].iter().copied())
            .collect();
        let sub_b: Vec<usize> = [ring[0], apex]
            .into_iter()
            .chain(ring[t + 1..].iter().copied())
            .collect();
        for (ca, pa) in shell_ring(&sub_a, adjacent) {
            for (cb, pb) in shell_ring(&sub_b, adjacent) {
                let mut chords = fixed.clone();
                chords.extend_from_slice(&ca);
                chords.extend_from_slice(&cb);
                let mut prov = format!("B{apex}");
                for p in [&pa, &pb] {
                    if !p.is_empty() {
                        prov.push('/');
                        prov.push_str(p);
                    }
                }
                out.push((chords, prov));
            }
        }
    }
    out
}

/// Shelling of the polygon triangulation complex, blocks indexed by the
/// apex of the triangle on the base edge `(base, base+1)`.
pub fn shell_polygon(m: usize, base: usize) -> Result<ShellingOrder> {
    let surface = Surface::polygon(m)?;
    if base < 1 || base > m {
        return Err(Error::InvalidArc(format!("base vertex {base} out of range")));
    }
    let labels: Vec<usize> = (0..m).map(|t| kpt(base as i64 + t as i64, m)).collect();
    let ring: Vec<usize> = (0..m).collect();
    let adjacent = |u: usize, v: usize| {
        let d = u.abs_diff(v);
        d == 1 || d == m - 1
    };
    let mut facets = Vec::new();
    let mut provenance = Vec::new();
    for (chords, prov) in shell_ring(&ring, &adjacent) {
        let arcs: Vec<QuasiArc> = chords
            .iter()
            .map(|&(s, t)| {
                let (a, b) = (labels[s], labels[t]);
                QuasiArc::Plain(a.min(b), a.max(b))
            })
            .collect();
        facets.push(Facet::new(arcs));
        provenance.push(prov);
    }
    Ok(ShellingOrder::new(surface, facets, provenance))
}

/// Shelling of the cylinder triangulations containing the boundary loop
/// at `i`: cut along the loop and shell the resulting polygon.
pub fn shell_cylinder_loop(n: usize, i: usize) -> Result<ShellingOrder> {
    let surface = Surface::cylinder(n)?;
    if n < 2 {
        return Err(Error::InvalidArc(
            "the boundary loop exists only for n >= 2".into(),
        ));
    }
    if i < 1 || i > n {
        return Err(Error::InvalidArc(format!("marked point {i} out of range")));
    }
    // Cut polygon: slots 0 and 1 are the two copies of `i`, then the rest
    // of the boundary clockwise.
    let l = n + 1;
    let labels: Vec<usize> = std::iter::once(i)
        .chain((0..n).map(|t| kpt(i as i64 + t as i64, n)))
        .collect();
    let ring: Vec<usize> = (0..l).collect();
    let adjacent = |u: usize, v: usize| {
        let d = u.abs_diff(v);
        d == 1 || d == l - 1
    };
    let chord_arc = |s: usize, t: usize| {
        if s == 0 {
            QuasiArc::Plain(labels[t], labels[0])
        } else {
            QuasiArc::Plain(labels[s], labels[t])
        }
    };
    let mut facets = Vec::new();
    let mut provenance = Vec::new();
    for (chords, prov) in shell_ring(&ring, &adjacent) {
        let arcs: Vec<QuasiArc> = chords.iter().map(|&(s, t)| chord_arc(s, t)).collect();
        facets.push(Facet::new(arcs));
        provenance.push(prov);
    }
    let order = ShellingOrder::new(surface, facets, provenance);
    cone(&order, QuasiArc::Plain(i, i)).map(|o| o.tag(&format!("loop{i}")))
}

/// Shelling of the full cylinder complex: loop blocks in boundary order.
pub fn shell_cylinder(n: usize) -> Result<ShellingOrder> {
    let surface = Surface::cylinder(n)?;
    if n == 1 {
        return Ok(unit_order(surface));
    }
    let blocks: Result<Vec<_>> = (1..=n).map(|i| shell_cylinder_loop(n, i)).collect();
    Ok(concat(blocks?))
}

// ---------------------------------------------------------------------
// Arc lengths in the even and odd crossing blocks.
// ---------------------------------------------------------------------

/// Length of a crossing arc inside the one-diagonal block of `mobius:n`
/// (`n` even, diagonal `C(1, n/2+1)`): the number of marked points swept
/// between the endpoints, with the crosscap loops at `1` and `n/2+1`
/// taking the two extreme values `n+1` and `1`.
pub fn even_length(n: usize, arc: &QuasiArc) -> Option<usize> {
    let k = n / 2;
    match arc {
        QuasiArc::Cross(a, b) if a == b => {
            if *a == 1 {
                Some(n + 1)
            } else if *a == k + 1 {
                Some(1)
            } else {
                None
            }
        }
        QuasiArc::Cross(a, b) => {
            if *a <= k + 1 && *b >= k + 1 && *b <= n {
                Some(b - a + 1)
            } else if *a == 1 && *b >= 2 && *b <= k {
                Some(n - b + 2)
            } else {
                None
            }
        }
        _ => None,
    }
}

/// Length of a crossing arc inside the one-d-triangle block of
/// `mobius:n` (`n` odd, special vertex `n/2 + 1`).
pub fn odd_length(n: usize, arc: &QuasiArc) -> Option<usize> {
    let k = n / 2;
    match arc {
        QuasiArc::Cross(a, b) if *a <= k + 1 && *b >= k + 1 && *b <= n => Some(b - a + 1),
        _ => None,
    }
}

/// The unique length-sum maximal facet of the first half.
pub fn t_max(n: usize) -> Result<Facet> {
    let k = even_k(n)?;
    let mut arcs = vec![QuasiArc::cross(1, k + 1)];
    for i in 2..=k + 1 {
        arcs.push(QuasiArc::cross(i, k + i - 1));
    }
    for i in 3..=k + 1 {
        arcs.push(QuasiArc::cross(i, k + i - 2));
    }
    Ok(Facet::new(arcs))
}

/// The unique length-sum minimal facet of the second half: the half-turn
/// image of `t_max`.
pub fn t_min(n: usize) -> Result<Facet> {
    Ok(t_max(n)?.rotate(n / 2, n))
}

fn even_k(n: usize) -> Result<usize> {
    if n == 0 || n % 2 != 0 {
        return Err(Error::Parity(format!("even-block machinery needs even n, got {n}")));
    }
    Ok(n / 2)
}

fn odd_k(n: usize) -> Result<usize> {
    if n % 2 != 1 {
        return Err(Error::Parity(format!("odd-block machinery needs odd n, got {n}")));
    }
    Ok(n / 2)
}

/// Classify a one-diagonal-block facet into its half and assert the
/// length separation: every non-diagonal arc has length at most `n/2`
/// in the first half and at least `n/2 + 2` in the second.
pub fn classify_block(n: usize, facet: &Facet) -> Result<Half> {
    let k = even_k(n)?;
    check_d_block(n, facet)?;
    let x1_mark = QuasiArc::cross(2, k + 1);
    let x2_mark = QuasiArc::cross(1, kpt(k as i64 + 2, n));
    let half = match (facet.contains(&x1_mark), facet.contains(&x2_mark)) {
        (true, false) => Half::X1,
        (false, true) => Half::X2,
        _ => {
            return Err(Error::WrongFamily(format!(
                "facet {facet} carries neither half marker exclusively"
            )))
        }
    };
    let diag = QuasiArc::cross(1, k + 1);
    for arc in facet.arcs() {
        if *arc == diag {
            continue;
        }
        let l = even_length(n, arc).ok_or_else(|| {
            Error::WrongFamily(format!("arc {arc} has no block length"))
        })?;
        let ok = match half {
            Half::X1 => l <= k,
            Half::X2 => l >= k + 2,
        };
        if !ok {
            return Err(Error::WrongFamily(format!(
                "arc {arc} of length {l} violates the {half} separation"
            )));
        }
    }
    Ok(half)
}

fn check_d_block(n: usize, facet: &Facet) -> Result<()> {
    let k = n / 2;
    let diag = QuasiArc::cross(1, k + 1);
    if !facet.contains(&diag) {
        return Err(Error::WrongFamily(format!("facet {facet} misses the diagonal")));
    }
    for i in 2..=k {
        if facet.contains(&QuasiArc::cross(i, k + i)) {
            return Err(Error::WrongFamily(format!(
                "facet {facet} carries a second diagonal"
            )));
        }
    }
    if facet.arcs().iter().any(|a| !a.is_cross()) {
        return Err(Error::WrongFamily(format!("facet {facet} is not crossing-only")));
    }
    Ok(())
}

// ---------------------------------------------------------------------
// Region relabeling.
// ---------------------------------------------------------------------

/// Normal form of an arc of the one-diagonal block of `mobius:2d`:
/// `(a, b)` with `a` in `[1, d+1]` and `b` in `[d+1, 2d+1]`, where
/// `b = 2d+1` encodes the wrapped endpoint `1`.
fn even_normal_form(sub_n: usize, arc: &QuasiArc) -> Result<(usize, usize)> {
    let d = sub_n / 2;
    match arc {
        QuasiArc::Cross(a, b) if a == b => {
            if *a == 1 {
                Ok((1, 2 * d + 1))
            } else if *a == d + 1 {
                Ok((d + 1, d + 1))
            } else {
                Err(Error::WrongFamily(format!("loop {arc} outside the block")))
            }
        }
        QuasiArc::Cross(a, b) => {
            if *a <= d + 1 && *b >= d + 1 && *b <= 2 * d {
                Ok((*a, *b))
            } else if *a == 1 && *b >= 2 && *b <= d {
                Ok((*b, 2 * d + 1))
            } else {
                Err(Error::WrongFamily(format!("arc {arc} outside the block")))
            }
        }
        _ => Err(Error::WrongFamily(format!("arc {arc} is not a crossing arc"))),
    }
}

/// Map a one-diagonal block order of `mobius:2d` into a region of
/// `mobius:n` whose top boundary starts at marked point `ts` and whose
/// bottom boundary starts at `bs`, dropping the block's own diagonal
/// (it maps to the region boundary).
fn map_even_region(
    sub: &ShellingOrder,
    n: usize,
    ts: usize,
    bs: usize,
    d: usize,
) -> Result<ShellingOrder> {
    let surface = Surface::mobius(n)?;
    let sub_diag = QuasiArc::cross(1, d + 1);
    let mut facets = Vec::with_capacity(sub.len());
    for f in sub.facets() {
        let mut arcs = Vec::with_capacity(f.len());
        for arc in f.arcs() {
            if *arc == sub_diag {
                continue;
            }
            let (a, b) = even_normal_form(2 * d, arc)?;
            arcs.push(QuasiArc::cross(
                kpt(ts as i64 + a as i64 - 1, n),
                kpt(bs as i64 + b as i64 - (d as i64 + 1), n),
            ));
        }
        facets.push(Facet::new(arcs));
    }
    Ok(ShellingOrder::new(surface, facets, sub.provenance().to_vec()))
}

// ---------------------------------------------------------------------
// The even half-block shellings.
// ---------------------------------------------------------------------

/// Upper shelling of the first half of the one-diagonal block: blocks by
/// the set of interior maximal-length arcs present, largest sets first,
/// each block a product of smaller first-half shellings over the regions
/// between consecutive maximal arcs.
pub fn upper_shell_x1(n: usize) -> Result<ShellingOrder> {
    let k = even_k(n)?;
    let surface = Surface::mobius(n)?;
    if n == 2 {
        let f = t_max(2)?;
        return Ok(ShellingOrder::new(surface, vec![f], vec!["Psi{}".into()]));
    }
    let interior: Vec<usize> = (3..=k).collect();
    let mut blocks = Vec::new();
    for size in (0..=interior.len()).rev() {
        for rows in combinations(&interior, size) {
            blocks.push(psi_block(n, &rows)?);
        }
    }
    Ok(concat(blocks))
}

fn psi_block(n: usize, rows_j: &[usize]) -> Result<ShellingOrder> {
    let k = n / 2;
    let surface = Surface::mobius(n)?;
    let mut rows = vec![2];
    rows.extend_from_slice(rows_j);
    rows.push(k + 1);
    let mut order = unit_order(surface);
    for w in rows.windows(2) {
        let (c, e) = (w[0], w[1]);
        let d = e - c;
        let sub = upper_shell_x1(2 * d)?;
        let mapped = map_even_region(&sub, n, c, k + c - 1, d)?;
        order = product_order(&order, &mapped)?;
    }
    // The diagonal, the two forced maximal arcs, and the chosen interior
    // maximal arcs.
    let mut fixed = vec![
        QuasiArc::cross(1, k + 1),
        QuasiArc::cross(2, k + 1),
        QuasiArc::cross(k + 1, n),
    ];
    for &c in rows_j {
        fixed.push(QuasiArc::cross(c, k + c - 1));
    }
    for arc in fixed {
        order = cone(&order, arc)?;
    }
    let label = format!(
        "Psi{{{}}}",
        rows_j
            .iter()
            .map(|c| format!("({},{})", c, k + c - 1))
            .collect::<Vec<_>>()
            .join(",")
    );
    Ok(order.tag(&label))
}

/// Lower shelling of the second half: the half-turn image of the upper
/// shelling of the first half.
pub fn lower_shell_x2(n: usize) -> Result<ShellingOrder> {
    let k = even_k(n)?;
    Ok(upper_shell_x1(n)?.map_arcs(|a| a.rotate(k, n)))
}

/// Special mutable arcs of a one-diagonal-block facet: the flip partner
/// is a diagonal, or the flip stays in the same half with increasing
/// (first half) or decreasing (second half) length.
pub fn special_mutable_even(n: usize, facet: &Facet) -> Result<Vec<QuasiArc>> {
    let half = classify_block(n, facet)?;
    let surface = Surface::mobius(n)?;
    let mut out = Vec::new();
    for arc in facet.arcs() {
        let (new_facet, new_arc) = crate::flip::flip(surface, facet, arc)?;
        if new_arc.is_cross() && is_diagonal(&surface, &new_arc)? {
            out.push(*arc);
            continue;
        }
        if !new_arc.is_cross() {
            continue;
        }
        if classify_block(n, &new_facet).map(|h| h == half).unwrap_or(false) {
            let old = even_length(n, arc);
            let new = even_length(n, &new_arc);
            let mutable = match (half, old, new) {
                (Half::X1, Some(o), Some(w)) => w > o,
                (Half::X2, Some(o), Some(w)) => w < o,
                _ => false,
            };
            if mutable {
                out.push(*arc);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Shelling of the crossing-only triangulations of `mobius:n` for even
/// `n`: blocks by the set of diagonals present, largest sets first, each
/// block a product of one-diagonal-block orders over the regions between
/// consecutive diagonals.
pub fn shell_ctri_even(n: usize) -> Result<ShellingOrder> {
    let k = even_k(n)?;
    let rows: Vec<usize> = (1..=k).collect();
    let mut blocks = Vec::new();
    for size in (1..=k).rev() {
        for rows_i in combinations(&rows, size) {
            blocks.push(d_even_block(n, &rows_i)?);
        }
    }
    Ok(concat(blocks))
}

fn d_even_block(n: usize, rows_i: &[usize]) -> Result<ShellingOrder> {
    let k = n / 2;
    let surface = Surface::mobius(n)?;
    let label = format!(
        "D{{{}}}",
        rows_i
            .iter()
            .map(|i| format!("({},{})", i, i + k))
            .collect::<Vec<_>>()
            .join(",")
    );
    let mut order = if rows_i.len() == 1 {
        let i = rows_i[0];
        let whole = concat(vec![
            upper_shell_x1(n)?.tag("X1"),
            lower_shell_x2(n)?.tag("X2"),
        ]);
        let sub_diag = QuasiArc::cross(1, k + 1);
        let dropped = ShellingOrder::new(
            surface,
            whole
                .facets()
                .iter()
                .map(|f| {
                    Facet::new(
                        f.arcs().iter().copied().filter(|a| *a != sub_diag).collect(),
                    )
                })
                .collect(),
            whole.provenance().to_vec(),
        );
        dropped.map_arcs(|a| a.rotate(i - 1, n))
    } else {
        let mut order = unit_order(surface);
        for t in 0..rows_i.len() {
            let c = rows_i[t];
            let e = if t + 1 < rows_i.len() {
                rows_i[t + 1]
            } else {
                rows_i[0] + k
            };
            let d = e - c;
            let sub = concat(vec![
                upper_shell_x1(2 * d)?.tag("X1"),
                lower_shell_x2(2 * d)?.tag("X2"),
            ]);
            let mapped = map_even_region(&sub, n, c, c + k, d)?;
            order = product_order(&order, &mapped)?;
        }
        order
    };
    for &i in rows_i {
        order = cone(&order, QuasiArc::cross(i, kpt(i as i64 + k as i64, n)))?;
    }
    Ok(order.tag(&label))
}

// ---------------------------------------------------------------------
// The odd case: diagonal triangles.
// ---------------------------------------------------------------------

/// Normal form of an arc of the one-d-triangle block of `mobius:m`
/// (`m = 2p - 1` odd): `(a, b)` with `a` in `[1, p]`, `b` in `[p, m]`.
fn odd_normal_form(sub_m: usize, arc: &QuasiArc) -> Result<(usize, usize)> {
    let p = sub_m / 2 + 1;
    match arc {
        QuasiArc::Cross(a, b) if *a <= p && *b >= p && *b <= sub_m => Ok((*a, *b)),
        _ => Err(Error::WrongFamily(format!("arc {arc} outside the block"))),
    }
}

/// Shelling of the block of crossing-only triangulations containing the
/// diagonal triangle at special vertex `n/2 + 1` and no other: pulled
/// back from the first even half one size up through the vertex-split
/// correspondence.
pub fn shell_y(n: usize) -> Result<ShellingOrder> {
    odd_k(n)?;
    let surface = Surface::mobius(n)?;
    let sub = upper_shell_x1(n + 1)?;
    let kk = (n + 1) / 2;
    let sub_diag = QuasiArc::cross(1, kk + 1);
    let mut facets = Vec::with_capacity(sub.len());
    for f in sub.facets() {
        let mut arcs = Vec::with_capacity(f.len());
        for arc in f.arcs() {
            if *arc == sub_diag {
                continue;
            }
            let QuasiArc::Cross(a, b) = arc else {
                return Err(Error::WrongFamily(format!("unexpected arc {arc}")));
            };
            arcs.push(QuasiArc::cross(a - 1, b - 1));
        }
        facets.push(Facet::new(arcs));
    }
    Ok(ShellingOrder::new(surface, facets, sub.provenance().to_vec()).tag("Y"))
}

/// Special mutable arcs in the one-d-triangle block: upper mutable, or
/// the flip creates an additional diagonal triangle.
pub fn special_mutable_odd(n: usize, facet: &Facet) -> Result<Vec<QuasiArc>> {
    odd_k(n)?;
    let surface = Surface::mobius(n)?;
    let own = crate::surface::d_triangle_vertices(&surface, facet.arcs())?;
    let mut out = Vec::new();
    for arc in facet.arcs() {
        let (new_facet, new_arc) = crate::flip::flip(surface, facet, arc)?;
        if !new_arc.is_cross() {
            continue;
        }
        let new_tris = crate::surface::d_triangle_vertices(&surface, new_facet.arcs())?;
        if new_tris.len() > own.len() {
            out.push(*arc);
            continue;
        }
        // Upper mutable within the block: both lengths defined, increasing,
        // and the d-triangle set unchanged.
        if new_tris == own {
            if let (Some(o), Some(w)) = (odd_length(n, arc), odd_length(n, &new_arc)) {
                if w > o {
                    out.push(*arc);
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// The admissible d-triangle vertex sets: chains under steps of
/// `n/2 + 1`, of odd length, as sorted sets. Ordered by size descending,
/// lexicographic within a size.
fn odd_chains(n: usize) -> Vec<Vec<usize>> {
    let k = n / 2;
    let step = k + 1;
    let mut out = Vec::new();
    let mut sizes: Vec<usize> = (1..=n).rev().filter(|r| r % 2 == 1).collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    for r in sizes {
        let mut sets = Vec::new();
        if r == n {
            sets.push((1..=n).collect::<Vec<usize>>());
        } else {
            for v0 in 1..=n {
                let mut set: Vec<usize> = (0..r)
                    .map(|t| kpt(v0 as i64 + (t * step) as i64, n))
                    .collect();
                set.sort_unstable();
                sets.push(set);
            }
            sets.sort();
            sets.dedup();
        }
        out.extend(sets);
    }
    out
}

/// Reconstruct the chain order of an admissible set: start at the vertex
/// whose chain predecessor is absent.
fn chain_order(n: usize, set: &[usize]) -> Vec<usize> {
    let k = n / 2;
    let step = k + 1;
    if set.len() == n {
        return (0..n).map(|t| kpt(1 + (t * step) as i64, n)).collect();
    }
    let start = set
        .iter()
        .copied()
        .find(|&v| !set.contains(&kpt(v as i64 - step as i64, n)))
        .expect("open chain has a start");
    (0..set.len())
        .map(|t| kpt(start as i64 + (t * step) as i64, n))
        .collect()
}

fn d_odd_block(n: usize, set: &[usize]) -> Result<ShellingOrder> {
    let k = n / 2;
    let surface = Surface::mobius(n)?;
    let chain = chain_order(n, set);
    let w = *chain.last().unwrap();
    let v = chain[0];
    // Gap between the chain's last and first d-triangle.
    let p = (v + 2 * n - w - k - 1) % n + 1;
    let m = 2 * p - 1;
    let sub = shell_y(m)?;
    let ts = kpt(w as i64 + k as i64 + 1, n);
    let bs = w;
    let y_base = [QuasiArc::cross(1, p), QuasiArc::cross(p, 2 * p - 1)];
    let mut base = Vec::new();
    for &u in &chain {
        base.push(QuasiArc::cross(u, kpt(u as i64 + k as i64, n)));
        base.push(QuasiArc::cross(u, kpt(u as i64 + k as i64 + 1, n)));
    }
    base.sort();
    base.dedup();
    let mut facets = Vec::with_capacity(sub.len());
    for f in sub.facets() {
        let mut arcs = base.clone();
        for arc in f.arcs() {
            if y_base.contains(arc) {
                continue;
            }
            let (a, b) = odd_normal_form(m, arc)?;
            arcs.push(QuasiArc::cross(
                kpt(ts as i64 + a as i64 - 1, n),
                kpt(bs as i64 + b as i64 - p as i64, n),
            ));
        }
        facets.push(Facet::new(arcs));
    }
    let label = format!(
        "D{{{}}}",
        set.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
    );
    Ok(ShellingOrder::new(surface, facets, sub.provenance().to_vec()).tag(&label))
}

/// Shelling of the crossing-only triangulations of `mobius:n` for odd
/// `n`: blocks by the admissible set of diagonal triangles present,
/// largest sets first.
pub fn shell_ctri_odd(n: usize) -> Result<ShellingOrder> {
    odd_k(n)?;
    let mut blocks = Vec::new();
    for set in odd_chains(n) {
        blocks.push(d_odd_block(n, &set)?);
    }
    Ok(concat(blocks))
}

/// Shelling of the crossing-only triangulations, either parity.
pub fn shell_ctri(n: usize) -> Result<ShellingOrder> {
    if n % 2 == 0 {
        shell_ctri_even(n)
    } else {
        shell_ctri_odd(n)
    }
}

// ---------------------------------------------------------------------
// Möbius assembly.
// ---------------------------------------------------------------------

/// Shelling of all triangulations of `mobius:n` (no one-sided curve):
/// blocks by the endpoint set `I` of the crossing arcs, largest sets
/// first; each block is the product of a crossing-core shelling on the
/// collapsed surface with polygon shellings of the gap regions.
pub fn shell_mobius_triangulations(n: usize) -> Result<ShellingOrder> {
    Surface::mobius(n)?;
    let points: Vec<usize> = (1..=n).collect();
    let mut blocks = Vec::new();
    for size in (1..=n).rev() {
        for set in combinations(&points, size) {
            blocks.push(gamma_block(n, &set)?);
        }
    }
    Ok(concat(blocks))
}

fn gamma_block(n: usize, set: &[usize]) -> Result<ShellingOrder> {
    let surface = Surface::mobius(n)?;
    let k = set.len();
    // Crossing core on the collapsed surface, relabeled through `set`.
    let core = shell_ctri(k)?;
    let core = ShellingOrder::new(
        surface,
        core.facets()
            .iter()
            .map(|f| {
                Facet::new(
                    f.arcs()
                        .iter()
                        .map(|a| match a {
                            QuasiArc::Cross(x, y) => QuasiArc::cross(set[x - 1], set[y - 1]),
                            other => *other,
                        })
                        .collect(),
                )
            })
            .collect(),
        core.provenance().to_vec(),
    );
    let mut order = core;
    // Gap polygons between consecutive crossing endpoints.
    for t in 0..k {
        let from = set[t];
        let to = set[(t + 1) % k];
        let g = if k == 1 {
            n - 1
        } else {
            (to + n - from) % n - 1
        };
        if g == 0 {
            continue;
        }
        let closing = QuasiArc::Plain(from, to);
        // Ring of the gap polygon: the closing arc is the base edge.
        let mut labels = vec![to, from];
        for s in 1..=g {
            labels.push(kpt(from as i64 + s as i64, n));
        }
        let l = labels.len();
        let adjacent = |u: usize, v: usize| {
            let d = u.abs_diff(v);
            d == 1 || d == l - 1
        };
        let ring: Vec<usize> = (0..l).collect();
        let mut facets = Vec::new();
        let mut provenance = Vec::new();
        for (chords, prov) in shell_ring(&ring, &adjacent) {
            let arcs: Vec<QuasiArc> = chords
                .iter()
                .map(|&(s, t)| {
                    if s == 0 {
                        QuasiArc::Plain(labels[t], labels[0])
                    } else {
                        QuasiArc::Plain(labels[s], labels[t])
                    }
                })
                .collect();
            facets.push(Facet::new(arcs));
            provenance.push(prov);
        }
        let gap = ShellingOrder::new(surface, facets, provenance);
        let gap = cone(&gap, closing)?.tag(&format!("gap({from}-{to})"));
        order = product_order(&order, &gap)?;
    }
    let label = format!(
        "Gamma{{{}}}",
        set.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
    );
    Ok(order.tag(&label))
}

/// Shelling of the full quasi-arc complex of `mobius:n`: all
/// triangulations first, then the cone of the cylinder complex over the
/// one-sided curve.
pub fn shell_mobius(n: usize) -> Result<ShellingOrder> {
    let surface = Surface::mobius(n)?;
    let triangulations = shell_mobius_triangulations(n)?;
    let cyl = shell_cylinder(n)?;
    let lifted = ShellingOrder::new(
        surface,
        cyl.facets().to_vec(),
        cyl.provenance().to_vec(),
    );
    let mu_block = cone(&lifted, QuasiArc::OneSided)?.tag("cone-mu");
    Ok(concat(vec![triangulations, mu_block]))
}

/// Shelling order for any of the three surfaces (used by the CLI).
pub fn shell_surface(surface: &Surface) -> Result<ShellingOrder> {
    match surface.kind() {
        SurfaceKind::Polygon => shell_polygon(surface.points(), 1),
        SurfaceKind::Cylinder => shell_cylinder(surface.points()),
        SurfaceKind::Mobius => shell_mobius(surface.points()),
    }
}
