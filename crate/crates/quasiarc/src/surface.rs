//! Marked surfaces, quasi-arcs and the compatibility predicate.
//!
//! Three families are supported:
//!
//! * `polygon:m` — the disk with `m ≥ 3` marked boundary points,
//! * `cylinder:n` — the annulus with `n` marked points on one boundary
//!   circle and none on the other,
//! * `mobius:n` — the Möbius strip with `n` marked boundary points.
//!
//! Marked points are labeled `1..=n` clockwise and all interval arithmetic
//! is cyclic. A quasi-arc is either an ordinary arc between marked points
//! or (on the Möbius strip) the unique one-sided closed curve `mu`.
//!
//! Compatibility of plain arcs on the cylinder and Möbius strip is decided
//! in the annular cover: an arc with disk side `[i,j]` lifts to the chord
//! family `[i, i+d] + tn` on the line, and two arcs are compatible exactly
//! when no pair of lifted chords crosses strictly. Crosscap arcs enter the
//! crosscap circle at antipodal points; two antipodal pairs on a circle
//! always interleave, which forces two crossing arcs to be compatible
//! exactly when their boundary endpoints interleave or coincide.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Maximum census size supported by the bitset representation.
pub const MAX_ARCS: usize = 128;

/// The three surface families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SurfaceKind {
    Polygon,
    Cylinder,
    Mobius,
}

/// A marked surface: a family tag plus the number of marked points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Surface {
    kind: SurfaceKind,
    n: usize,
}

impl Surface {
    pub fn polygon(m: usize) -> Result<Self> {
        if m < 3 {
            return Err(Error::InvalidSurface(format!(
                "polygon needs at least 3 vertices, got {m}"
            )));
        }
        Ok(Surface { kind: SurfaceKind::Polygon, n: m })
    }

    pub fn cylinder(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidSurface("cylinder needs n >= 1".into()));
        }
        Ok(Surface { kind: SurfaceKind::Cylinder, n })
    }

    pub fn mobius(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidSurface("mobius needs n >= 1".into()));
        }
        Ok(Surface { kind: SurfaceKind::Mobius, n })
    }

    pub fn kind(&self) -> SurfaceKind {
        self.kind
    }

    /// Number of marked points (polygon vertices for the polygon).
    pub fn points(&self) -> usize {
        self.n
    }

    /// Number of quasi-arcs in every quasi-triangulation.
    pub fn rank(&self) -> usize {
        match self.kind {
            SurfaceKind::Polygon => self.n - 3,
            SurfaceKind::Cylinder => {
                if self.n == 1 {
                    0
                } else {
                    self.n - 1
                }
            }
            SurfaceKind::Mobius => self.n,
        }
    }

    pub fn successor(&self, p: usize) -> usize {
        p % self.n + 1
    }

    pub fn predecessor(&self, p: usize) -> usize {
        (p + self.n - 2) % self.n + 1
    }

    /// Clockwise distance from `a` to `b`, in `0..n`.
    pub fn cw_dist(&self, a: usize, b: usize) -> usize {
        (b + self.n - a) % self.n
    }

    /// Does `x` lie strictly inside the clockwise open interval `(a, b)`?
    /// For `a == b` the open interval contains every point except `a`.
    pub fn in_open(&self, a: usize, b: usize, x: usize) -> bool {
        if a == b {
            return x != a;
        }
        let d = self.cw_dist(a, x);
        d > 0 && d < self.cw_dist(a, b)
    }

    fn check_point(&self, p: usize) -> Result<()> {
        if p == 0 || p > self.n {
            return Err(Error::InvalidArc(format!(
                "marked point {p} out of range 1..={}",
                self.n
            )));
        }
        Ok(())
    }

    /// All quasi-arcs of the surface in canonical order.
    pub fn census(&self) -> ArcSet {
        let mut arcs = Vec::new();
        match self.kind {
            SurfaceKind::Polygon => {
                let m = self.n;
                for i in 1..=m {
                    for j in (i + 2)..=m {
                        if i == 1 && j == m {
                            continue;
                        }
                        arcs.push(QuasiArc::Plain(i, j));
                    }
                }
            }
            SurfaceKind::Cylinder => {
                self.push_plain_arcs(&mut arcs);
            }
            SurfaceKind::Mobius => {
                arcs.push(QuasiArc::OneSided);
                self.push_plain_arcs(&mut arcs);
                for a in 1..=self.n {
                    for b in a..=self.n {
                        arcs.push(QuasiArc::Cross(a, b));
                    }
                }
            }
        }
        arcs.sort();
        ArcSet { surface: *self, arcs }
    }

    fn push_plain_arcs(&self, arcs: &mut Vec<QuasiArc>) {
        let n = self.n;
        if n >= 2 {
            for i in 1..=n {
                arcs.push(QuasiArc::Plain(i, i));
            }
        }
        for i in 1..=n {
            for j in 1..=n {
                if j != i && self.cw_dist(i, j) >= 2 {
                    arcs.push(QuasiArc::Plain(i, j));
                }
            }
        }
    }

    /// Validity of a single quasi-arc on this surface.
    pub fn validate_arc(&self, arc: &QuasiArc) -> Result<()> {
        match (self.kind, arc) {
            (SurfaceKind::Mobius, QuasiArc::OneSided) => Ok(()),
            (_, QuasiArc::OneSided) => {
                Err(Error::InvalidArc("mu exists only on the Möbius strip".into()))
            }
            (SurfaceKind::Polygon, QuasiArc::Plain(i, j)) => {
                self.check_point(*i)?;
                self.check_point(*j)?;
                if i >= j || self.cw_dist(*i, *j) < 2 || self.cw_dist(*j, *i) < 2 {
                    return Err(Error::InvalidArc(format!(
                        "P({i},{j}) is not a diagonal of the {}-gon",
                        self.n
                    )));
                }
                Ok(())
            }
            (SurfaceKind::Polygon, QuasiArc::Cross(..)) => {
                Err(Error::InvalidArc("crosscap arcs need a crosscap".into()))
            }
            (_, QuasiArc::Plain(i, j)) => {
                self.check_point(*i)?;
                self.check_point(*j)?;
                if i == j {
                    if self.n < 2 {
                        return Err(Error::InvalidArc(
                            "the boundary loop is trivial for n = 1".into(),
                        ));
                    }
                    Ok(())
                } else if self.cw_dist(*i, *j) < 2 {
                    Err(Error::InvalidArc(format!(
                        "P({i},{j}) cuts off an empty disk"
                    )))
                } else {
                    Ok(())
                }
            }
            (SurfaceKind::Cylinder, QuasiArc::Cross(..)) => {
                Err(Error::InvalidArc("crosscap arcs need a crosscap".into()))
            }
            (SurfaceKind::Mobius, QuasiArc::Cross(a, b)) => {
                self.check_point(*a)?;
                self.check_point(*b)?;
                if a > b {
                    return Err(Error::InvalidArc(format!(
                        "C({a},{b}) is not in canonical order"
                    )));
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            SurfaceKind::Polygon => write!(f, "polygon:{}", self.n),
            SurfaceKind::Cylinder => write!(f, "cylinder:{}", self.n),
            SurfaceKind::Mobius => write!(f, "mobius:{}", self.n),
        }
    }
}

impl std::str::FromStr for Surface {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, num) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected family:n, got {s:?}")))?;
        let n: usize = num
            .parse()
            .map_err(|_| Error::Parse(format!("bad point count {num:?}")))?;
        match kind {
            "polygon" => Surface::polygon(n),
            "cylinder" => Surface::cylinder(n),
            "mobius" => Surface::mobius(n),
            other => Err(Error::Parse(format!("unknown surface family {other:?}"))),
        }
    }
}

/// A quasi-arc.
///
/// * `OneSided` — the one-sided closed curve `mu`, unique on the Möbius strip.
/// * `Plain(i, j)` — an arc avoiding the crosscap (or inner boundary). On the
///   cylinder and Möbius strip the pair is ordered: the disk side is the
///   clockwise closed interval `[i, j]`, and `Plain(i, i)` is the boundary
///   loop at `i` enclosing the crosscap. On the polygon the pair is an
///   unordered diagonal stored with `i < j`.
/// * `Cross(a, b)` — an arc through the crosscap, unordered with `a <= b`,
///   loops (`a == b`) allowed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QuasiArc {
    OneSided,
    Plain(usize, usize),
    Cross(usize, usize),
}

impl QuasiArc {
    /// Canonical crossing arc (sorts the endpoints).
    pub fn cross(a: usize, b: usize) -> QuasiArc {
        if a <= b {
            QuasiArc::Cross(a, b)
        } else {
            QuasiArc::Cross(b, a)
        }
    }

    pub fn is_cross(&self) -> bool {
        matches!(self, QuasiArc::Cross(..))
    }

    pub fn is_plain(&self) -> bool {
        matches!(self, QuasiArc::Plain(..))
    }

    pub fn is_one_sided(&self) -> bool {
        matches!(self, QuasiArc::OneSided)
    }

    /// Marked points the arc touches.
    pub fn endpoints(&self) -> Vec<usize> {
        match self {
            QuasiArc::OneSided => vec![],
            QuasiArc::Plain(i, j) | QuasiArc::Cross(i, j) => {
                if i == j {
                    vec![*i]
                } else {
                    vec![*i, *j]
                }
            }
        }
    }

    /// Image under rotation of the marked points by `s` steps clockwise.
    pub fn rotate(&self, s: usize, n: usize) -> QuasiArc {
        let rot = |p: usize| (p - 1 + s) % n + 1;
        match self {
            QuasiArc::OneSided => QuasiArc::OneSided,
            QuasiArc::Plain(i, j) => QuasiArc::Plain(rot(*i), rot(*j)),
            QuasiArc::Cross(a, b) => QuasiArc::cross(rot(*a), rot(*b)),
        }
    }
}

impl fmt::Display for QuasiArc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuasiArc::OneSided => write!(f, "mu"),
            QuasiArc::Plain(i, j) => write!(f, "P({i},{j})"),
            QuasiArc::Cross(a, b) => write!(f, "C({a},{b})"),
        }
    }
}

impl std::str::FromStr for QuasiArc {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "mu" {
            return Ok(QuasiArc::OneSided);
        }
        let (head, rest) = s
            .split_at_checked(2)
            .ok_or_else(|| Error::Parse(format!("bad arc {s:?}")))?;
        let body = rest
            .strip_suffix(')')
            .ok_or_else(|| Error::Parse(format!("bad arc {s:?}")))?;
        let (a, b) = body
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("bad arc {s:?}")))?;
        let a: usize = a.trim().parse().map_err(|_| Error::Parse(format!("bad arc {s:?}")))?;
        let b: usize = b.trim().parse().map_err(|_| Error::Parse(format!("bad arc {s:?}")))?;
        match head {
            "P(" => Ok(QuasiArc::Plain(a, b)),
            "C(" => Ok(QuasiArc::Cross(a, b)),
            _ => Err(Error::Parse(format!("bad arc {s:?}"))),
        }
    }
}

/// A validated, canonically ordered set of quasi-arcs on one surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcSet {
    pub surface: Surface,
    pub arcs: Vec<QuasiArc>,
}

impl ArcSet {
    pub fn new(surface: Surface, mut arcs: Vec<QuasiArc>) -> Result<Self> {
        for a in &arcs {
            surface.validate_arc(a)?;
        }
        arcs.sort();
        arcs.dedup();
        Ok(ArcSet { surface, arcs })
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }
}

/// Compatibility: do the two quasi-arcs admit disjoint representatives?
/// Symmetric, and reflexively true.
pub fn compatible(surface: &Surface, x: &QuasiArc, y: &QuasiArc) -> bool {
    if x == y {
        return true;
    }
    match (x, y) {
        (QuasiArc::OneSided, QuasiArc::OneSided) => true,
        (QuasiArc::OneSided, QuasiArc::Plain(..))
        | (QuasiArc::Plain(..), QuasiArc::OneSided) => true,
        (QuasiArc::OneSided, QuasiArc::Cross(..))
        | (QuasiArc::Cross(..), QuasiArc::OneSided) => false,
        (QuasiArc::Plain(i, j), QuasiArc::Plain(k, l)) => match surface.kind() {
            SurfaceKind::Polygon => polygon_noncrossing(*i, *j, *k, *l),
            _ => annulus_compatible(surface, *i, *j, *k, *l),
        },
        (QuasiArc::Plain(i, j), QuasiArc::Cross(a, b))
        | (QuasiArc::Cross(a, b), QuasiArc::Plain(i, j)) => {
            !surface.in_open(*i, *j, *a) && !surface.in_open(*i, *j, *b)
        }
        (QuasiArc::Cross(a, b), QuasiArc::Cross(c, d)) => {
            cross_compatible(surface, *a, *b, *c, *d)
        }
    }
}

/// Classical non-crossing test for polygon diagonals (shared endpoints allowed).
fn polygon_noncrossing(i: usize, j: usize, k: usize, l: usize) -> bool {
    if i == k || i == l || j == k || j == l {
        return true;
    }
    let inside = |x: usize| i < x && x < j;
    inside(k) == inside(l)
}

/// Plain arcs on the cylinder or Möbius strip, decided in the annular cover.
///
/// The arc with disk side `[i, j]` lifts to chords over `[i, i+d]` where
/// `d = cw_dist(i, j)` (a boundary loop has `d = n`). Two arcs are
/// compatible iff no translate of one chord strictly crosses the other.
fn annulus_compatible(surface: &Surface, i: usize, j: usize, k: usize, l: usize) -> bool {
    let n = surface.points() as i64;
    let d1 = if i == j { n } else { surface.cw_dist(i, j) as i64 };
    let d2 = if k == l { n } else { surface.cw_dist(k, l) as i64 };
    let (a1, b1) = (i as i64, i as i64 + d1);
    for t in -2..=2i64 {
        let a2 = k as i64 + t * n;
        let b2 = a2 + d2;
        // Strict interleaving; chords touching at a shared lift do not cross.
        if (a1 < a2 && a2 < b1 && b1 < b2) || (a2 < a1 && a1 < b2 && b2 < b1) {
            return false;
        }
    }
    true
}

/// Crosscap arcs: loops glue only to arcs through their base point; two
/// non-loops need a shared endpoint or strictly interleaved endpoints.
fn cross_compatible(surface: &Surface, a: usize, b: usize, c: usize, d: usize) -> bool {
    match (a == b, c == d) {
        (true, true) => a == c,
        (true, false) => a == c || a == d,
        (false, true) => c == a || c == b,
        (false, false) => {
            if a == c || a == d || b == c || b == d {
                return true;
            }
            surface.in_open(a, b, c) != surface.in_open(a, b, d)
        }
    }
}

/// Is the arc a crosscap arc?
pub fn is_c_arc(surface: &Surface, arc: &QuasiArc) -> Result<bool> {
    if surface.kind() != SurfaceKind::Mobius {
        return Err(Error::InvalidSurface(
            "crosscap queries need a Möbius surface".into(),
        ));
    }
    Ok(arc.is_cross())
}

/// Is the arc a diagonal crossing arc `C(i, i + n/2)`? Requires even `n`.
pub fn is_diagonal(surface: &Surface, arc: &QuasiArc) -> Result<bool> {
    if surface.kind() != SurfaceKind::Mobius {
        return Err(Error::InvalidSurface(
            "diagonal queries need a Möbius surface".into(),
        ));
    }
    let n = surface.points();
    if n % 2 != 0 {
        return Err(Error::Parity(format!("diagonal arcs need even n, got {n}")));
    }
    Ok(match arc {
        QuasiArc::Cross(a, b) => surface.cw_dist(*a, *b) == n / 2,
        _ => false,
    })
}

/// All diagonal crossing arcs of `mobius:n` for even `n`.
pub fn diagonals(surface: &Surface) -> Result<Vec<QuasiArc>> {
    let n = surface.points();
    if surface.kind() != SurfaceKind::Mobius || n % 2 != 0 {
        return Err(Error::Parity("diagonals need mobius with even n".into()));
    }
    Ok((1..=n / 2).map(|i| QuasiArc::cross(i, i + n / 2)).collect())
}

/// If the arc set contains the two crossing arcs of a diagonal triangle
/// with special vertex `v`, report `v`. Requires odd `n`.
pub fn d_triangle_vertex(surface: &Surface, arcs: &[QuasiArc]) -> Result<Option<usize>> {
    let vs = d_triangle_vertices(surface, arcs)?;
    Ok(vs.into_iter().next())
}

/// All special vertices whose diagonal triangle is contained in the arc set.
pub fn d_triangle_vertices(surface: &Surface, arcs: &[QuasiArc]) -> Result<Vec<usize>> {
    if surface.kind() != SurfaceKind::Mobius {
        return Err(Error::InvalidSurface(
            "d-triangle queries need a Möbius surface".into(),
        ));
    }
    let n = surface.points();
    if n % 2 != 1 {
        return Err(Error::Parity(format!("d-triangles need odd n, got {n}")));
    }
    let k = n / 2;
    let mut out = Vec::new();
    for v in 1..=n {
        let first = QuasiArc::cross(v, (v - 1 + k) % n + 1);
        let second = QuasiArc::cross(v, (v + k) % n + 1);
        if n == 1 {
            // Degenerate: both arcs collapse to the crosscap loop.
            if arcs.contains(&QuasiArc::Cross(1, 1)) {
                out.push(1);
            }
            continue;
        }
        if arcs.contains(&first) && arcs.contains(&second) {
            out.push(v);
        }
    }
    Ok(out)
}

/// Does the triple contain a diagonal triangle?
pub fn is_d_triangle(surface: &Surface, arcs: &[QuasiArc]) -> Result<bool> {
    Ok(d_triangle_vertex(surface, arcs)?.is_some())
}

/// A census with fast membership lookup and a compatibility matrix.
#[derive(Debug, Clone)]
pub struct Census {
    surface: Surface,
    arcs: Vec<QuasiArc>,
    index: HashMap<QuasiArc, usize>,
    compat: Vec<u128>,
}

impl Census {
    pub fn new(surface: Surface) -> Result<Self> {
        let set = surface.census();
        if set.len() > MAX_ARCS {
            return Err(Error::CapExceeded(format!(
                "census of {} has {} arcs, more than the supported {MAX_ARCS}",
                surface,
                set.len()
            )));
        }
        Self::from_arcs(surface, set.arcs)
    }

    /// A census restricted to a sub-ground-set (for example only the
    /// crossing arcs). Facets computed against it are maximal within
    /// that ground set only.
    pub fn from_arcs(surface: Surface, arcs: Vec<QuasiArc>) -> Result<Self> {
        if arcs.len() > MAX_ARCS {
            return Err(Error::CapExceeded(format!(
                "ground set has {} arcs, more than the supported {MAX_ARCS}",
                arcs.len()
            )));
        }
        let mut index = HashMap::new();
        for (i, a) in arcs.iter().enumerate() {
            surface.validate_arc(a)?;
            index.insert(*a, i);
        }
        let mut compat = vec![0u128; arcs.len()];
        for i in 0..arcs.len() {
            for j in 0..arcs.len() {
                if i != j && compatible(&surface, &arcs[i], &arcs[j]) {
                    compat[i] |= 1u128 << j;
                }
            }
        }
        Ok(Census { surface, arcs, index, compat })
    }

    pub fn surface(&self) -> &Surface {
        &self.surface
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

    pub fn index_of(&self, arc: &QuasiArc) -> Result<usize> {
        self.index.get(arc).copied().ok_or_else(|| {
            Error::UnknownArc(arc.to_string(), self.surface.to_string())
        })
    }

    /// Compatibility row of arc `i`, excluding the arc itself.
    pub fn row(&self, i: usize) -> u128 {
        self.compat[i]
    }

    /// Convert an arc list into a bitmask over the census.
    pub fn mask_of(&self, arcs: &[QuasiArc]) -> Result<u128> {
        let mut m = 0u128;
        for a in arcs {
            m |= 1u128 << self.index_of(a)?;
        }
        Ok(m)
    }

    /// Convert a bitmask back to the sorted arc list.
    pub fn arcs_of(&self, mask: u128) -> Vec<QuasiArc> {
        bits(mask).map(|i| self.arcs[i]).collect()
    }
}

/// Iterate set bit positions of a mask, ascending.
pub fn bits(mask: u128) -> impl Iterator<Item = usize> {
    std::iter::successors(
        if mask == 0 { None } else { Some(mask) },
        |m| {
            let m = m & (m - 1);
            if m == 0 {
                None
            } else {
                Some(m)
            }
        },
    )
    .map(|m| m.trailing_zeros() as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mob(n: usize) -> Surface {
        Surface::mobius(n).unwrap()
    }

    fn cyl(n: usize) -> Surface {
        Surface::cylinder(n).unwrap()
    }

    fn pol(m: usize) -> Surface {
        Surface::polygon(m).unwrap()
    }

    /// Brute-force census: filter every encoding through `validate_arc`.
    fn naive_census(s: &Surface) -> Vec<QuasiArc> {
        let n = s.points();
        let mut out = Vec::new();
        if s.validate_arc(&QuasiArc::OneSided).is_ok() {
            out.push(QuasiArc::OneSided);
        }
        for i in 1..=n {
            for j in 1..=n {
                for arc in [QuasiArc::Plain(i, j), QuasiArc::Cross(i, j)] {
                    if s.validate_arc(&arc).is_ok() && !out.contains(&arc) {
                        out.push(arc);
                    }
                }
            }
        }
        out.sort();
        out
    }

    #[test]
    fn census_counts_match_closed_forms() {
        for m in 3..=10 {
            let s = pol(m);
            assert_eq!(s.census().len(), m * (m - 3) / 2, "polygon {m}");
        }
        for n in 1..=10 {
            let s = cyl(n);
            let expect = if n == 1 { 0 } else { n + n * (n - 2) };
            assert_eq!(s.census().len(), expect, "cylinder {n}");
        }
        for n in 1..=10 {
            let s = mob(n);
            let expect = if n == 1 {
                2
            } else {
                1 + n + n * (n + 1) / 2 + n * (n - 2)
            };
            assert_eq!(s.census().len(), expect, "mobius {n}");
        }
    }

    #[test]
    fn census_matches_naive_filter() {
        for n in 1..=8 {
            let s = mob(n);
            assert_eq!(s.census().arcs, naive_census(&s));
            let s = cyl(n);
            assert_eq!(s.census().arcs, naive_census(&s));
        }
        for m in 3..=10 {
            let s = pol(m);
            assert_eq!(s.census().arcs, naive_census(&s));
        }
    }

    #[test]
    fn census_square_and_tiny_mobius() {
        assert_eq!(
            pol(4).census().arcs,
            vec![QuasiArc::Plain(1, 3), QuasiArc::Plain(2, 4)]
        );
        assert_eq!(
            mob(1).census().arcs,
            vec![QuasiArc::OneSided, QuasiArc::Cross(1, 1)]
        );
        assert_eq!(mob(3).census().len(), 13);
    }

    #[test]
    fn compatibility_examples() {
        let m6 = mob(6);
        assert!(compatible(&m6, &QuasiArc::Cross(1, 4), &QuasiArc::Cross(2, 5)));
        assert!(compatible(&m6, &QuasiArc::OneSided, &QuasiArc::Plain(2, 5)));
        let m3 = mob(3);
        assert!(!compatible(&m3, &QuasiArc::Plain(1, 3), &QuasiArc::Plain(2, 1)));
        let m4 = mob(4);
        assert!(!compatible(&m4, &QuasiArc::Cross(2, 2), &QuasiArc::Cross(1, 3)));
    }

    #[test]
    fn compatibility_is_symmetric_and_reflexive() {
        for n in 1..=8 {
            for s in [mob(n), cyl(n)] {
                let arcs = s.census().arcs;
                for x in &arcs {
                    assert!(compatible(&s, x, x));
                    for y in &arcs {
                        assert_eq!(compatible(&s, x, y), compatible(&s, y, x));
                    }
                }
            }
        }
    }

    #[test]
    fn polygon_compatibility_matches_naive_chord_test() {
        for m in 4..=10 {
            let s = pol(m);
            let arcs = s.census().arcs;
            for x in &arcs {
                for y in &arcs {
                    let (&QuasiArc::Plain(i, j), &QuasiArc::Plain(k, l)) = (x, y) else {
                        unreachable!()
                    };
                    // Straight chords cross iff the endpoint pairs separate
                    // each other around the circle and share no vertex.
                    let shares = i == k || i == l || j == k || j == l;
                    let inside = |p: usize| i < p && p < j;
                    let sep = !shares && inside(k) != inside(l);
                    assert_eq!(compatible(&s, x, y), !sep, "{x} vs {y} on {s}");
                }
            }
        }
    }

    #[test]
    fn loop_vs_plain_matches_interval_rule() {
        // The boundary loop at p is compatible with P(k,l) iff p is not
        // strictly inside (k,l).
        for n in 3..=7 {
            let s = cyl(n);
            for p in 1..=n {
                for k in 1..=n {
                    for l in 1..=n {
                        let arc = QuasiArc::Plain(k, l);
                        if s.validate_arc(&arc).is_err() || k == l {
                            continue;
                        }
                        let expect = !s.in_open(k, l, p);
                        assert_eq!(
                            compatible(&s, &QuasiArc::Plain(p, p), &arc),
                            expect,
                            "loop {p} vs P({k},{l}) on cylinder:{n}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn diagonal_and_d_triangle_queries() {
        let m6 = mob(6);
        assert!(is_diagonal(&m6, &QuasiArc::Cross(2, 5)).unwrap());
        assert!(!is_diagonal(&m6, &QuasiArc::Cross(2, 4)).unwrap());
        assert!(is_diagonal(&mob(5), &QuasiArc::Cross(1, 3)).is_err());

        let m5 = mob(5);
        let arcs = [QuasiArc::Cross(3, 5), QuasiArc::Cross(1, 3)];
        assert_eq!(d_triangle_vertex(&m5, &arcs).unwrap(), Some(3));
        assert!(is_d_triangle(&m6, &arcs).is_err());
    }

    #[test]
    fn arc_text_round_trip() {
        for s in ["mu", "P(1,3)", "C(2,2)", "P(10,2)"] {
            let arc: QuasiArc = s.parse().unwrap();
            assert_eq!(arc.to_string(), s);
        }
        for s in ["polygon:6", "cylinder:3", "mobius:9"] {
            let surf: Surface = s.parse().unwrap();
            assert_eq!(surf.to_string(), s);
        }
        assert!("P(1;3)".parse::<QuasiArc>().is_err());
        assert!("polygon:2".parse::<Surface>().is_err());
    }
}
