//! Dyck paths and the one-diagonal crossing block.
//!
//! Each half of the one-diagonal block of `mobius:n` (even `n`, halves
//! separated by arc length) is in bijection with the Dyck paths of
//! semilength `n/2 - 1`: the maximal-length arcs present in a facet mark
//! the returns to the baseline, and each region between consecutive
//! maximal arcs recurses one arch deeper. The measured convention is
//! recorded here because the block sizes force it: each half has Catalan
//! `n/2 - 1` facets, so the whole block carries a half tag alongside the
//! path. Flips inside a half correspond to single-node toggles between
//! adjacent paths; the second half mirrors the first through the
//! half-turn of the surface.

use std::fmt;

use crate::complex::Facet;
use crate::construct::{classify_block, even_length, Half};
use crate::error::{Error, Result};
use crate::surface::QuasiArc;

/// A balanced lattice path that never dips below its baseline, stored as
/// its semilength and step word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DyckPath {
    steps: Vec<Step>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    Up,
    Down,
}

impl DyckPath {
    pub fn new(steps: Vec<Step>) -> Result<Self> {
        let mut h: i64 = 0;
        for s in &steps {
            h += match s {
                Step::Up => 1,
                Step::Down => -1,
            };
            if h < 0 {
                return Err(Error::Parse("path dips below the baseline".into()));
            }
        }
        if h != 0 {
            return Err(Error::Parse("path is not balanced".into()));
        }
        Ok(DyckPath { steps })
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn semilength(&self) -> usize {
        self.steps.len() / 2
    }

    /// Heights at every node, baseline included: `len + 1` values.
    pub fn heights(&self) -> Vec<i64> {
        let mut out = vec![0];
        let mut h = 0;
        for s in &self.steps {
            h += match s {
                Step::Up => 1,
                Step::Down => -1,
            };
            out.push(h);
        }
        out
    }

    /// Do the two paths differ at exactly one interior node?
    pub fn single_node_toggle(&self, other: &DyckPath) -> bool {
        if self.steps.len() != other.steps.len() {
            return false;
        }
        let a = self.heights();
        let b = other.heights();
        a.iter().zip(&b).filter(|(x, y)| x != y).count() == 1
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            f.write_str(match s {
                Step::Up => "U",
                Step::Down => "D",
            })?;
        }
        Ok(())
    }
}

impl std::str::FromStr for DyckPath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let steps: Result<Vec<Step>> = s
            .chars()
            .map(|c| match c {
                'U' => Ok(Step::Up),
                'D' => Ok(Step::Down),
                other => Err(Error::Parse(format!("bad step {other:?}"))),
            })
            .collect();
        DyckPath::new(steps?)
    }
}

/// Path of a first-half facet: arches follow the regions between
/// consecutive maximal arcs.
fn x1_path(n: usize, facet: &Facet) -> Result<Vec<Step>> {
    let k = n / 2;
    if n == 2 {
        return Ok(vec![]);
    }
    let mut rows = vec![2];
    for c in 3..=k {
        if facet.contains(&QuasiArc::cross(c, k + c - 1)) {
            rows.push(c);
        }
    }
    rows.push(k + 1);
    let mut steps = Vec::new();
    for w in rows.windows(2) {
        let (c, e) = (w[0], w[1]);
        let d = e - c;
        steps.push(Step::Up);
        if d > 1 {
            let sub = unmap_region(n, facet, c, e)?;
            steps.extend(x1_path(2 * d, &sub)?);
        }
        steps.push(Step::Down);
    }
    Ok(steps)
}

/// Pull the facet's arcs inside the region between maximal arcs at rows
/// `c` and `e` back to a first-half facet of the collapsed block.
fn unmap_region(n: usize, facet: &Facet, c: usize, e: usize) -> Result<Facet> {
    let k = n / 2;
    let d = e - c;
    let mut arcs = vec![QuasiArc::cross(1, d + 1)];
    for arc in facet.arcs() {
        let QuasiArc::Cross(x, y) = arc else { continue };
        // Region arcs: x in (c, e], y in [k+c-1, k+e-1], excluding the
        // boundary maximal arcs.
        if *x > c && *x <= e && *y >= k + c - 1 && *y < k + e - 1 {
            let a = x - c + 1;
            let b = y - (k + c - 1) + d + 1;
            let b = (b - 1) % (2 * d) + 1;
            arcs.push(QuasiArc::cross(a, b));
        }
    }
    Ok(Facet::new(arcs))
}

/// Rebuild the first-half facet of a path.
fn x1_facet(n: usize, steps: &[Step]) -> Result<Facet> {
    let k = n / 2;
    let mut arcs = vec![
        QuasiArc::cross(1, k + 1),
        QuasiArc::cross(2, k + 1),
        QuasiArc::cross(k + 1, n),
    ];
    if 2 * (k - 1) != steps.len() {
        return Err(Error::Parse(format!(
            "path has semilength {}, block size {n} needs {}",
            steps.len() / 2,
            k - 1
        )));
    }
    let mut c = 2;
    for arch in arches(steps) {
        let d = arch.len() / 2 + 1;
        let e = c + d;
        // The maximal arc at the arch's right boundary (the left one is
        // already present).
        if e <= k {
            arcs.push(QuasiArc::cross(e, k + e - 1));
        }
        let inner = x1_facet(2 * d, arch)?;
        let sub_diag = QuasiArc::cross(1, d + 1);
        for arc in inner.arcs() {
            if *arc == sub_diag {
                continue;
            }
            let QuasiArc::Cross(a, b) = arc else { unreachable!() };
            // Positional map into the region: top at c, bottom at k+c-1.
            let (a, b) = normal_even(2 * d, *a, *b);
            let x = c + a - 1;
            let y = (k + c - 1 + b - (d + 1) - 1) % n + 1;
            arcs.push(QuasiArc::cross(x, y));
        }
        c = e;
    }
    Ok(Facet::new(arcs))
}

/// Normal form `(a, b)` with `b` in `[d+1, 2d+1]` of a block arc of
/// `mobius:2d`.
fn normal_even(sub_n: usize, a: usize, b: usize) -> (usize, usize) {
    let d = sub_n / 2;
    if a == b {
        if a == 1 {
            (1, 2 * d + 1)
        } else {
            (d + 1, d + 1)
        }
    } else if a == 1 && b < d + 1 {
        (b, 2 * d + 1)
    } else {
        (a, b)
    }
}

/// Split a Dyck word into its arches (segments between returns to the
/// baseline), with the outer steps stripped.
fn arches(steps: &[Step]) -> Vec<&[Step]> {
    let mut out = Vec::new();
    let mut depth = 0i64;
    let mut start = 0;
    for (i, s) in steps.iter().enumerate() {
        depth += match s {
            Step::Up => 1,
            Step::Down => -1,
        };
        if depth == 0 {
            out.push(&steps[start + 1..i]);
            start = i + 1;
        }
    }
    out
}

/// Map a one-diagonal-block facet to its half and Dyck path.
pub fn to_dyck(n: usize, facet: &Facet) -> Result<(Half, DyckPath)> {
    let half = classify_block(n, facet)?;
    let path = match half {
        Half::X1 => x1_path(n, facet)?,
        Half::X2 => x1_path(n, &facet.rotate(n / 2, n))?,
    };
    Ok((half, DyckPath::new(path)?))
}

/// Rebuild the one-diagonal-block facet of a half and path.
pub fn from_dyck(n: usize, half: Half, path: &DyckPath) -> Result<Facet> {
    if n % 2 != 0 || n < 2 {
        return Err(Error::Parity(format!("the block needs even n, got {n}")));
    }
    let f = x1_facet(n, path.steps())?;
    Ok(match half {
        Half::X1 => f,
        Half::X2 => f.rotate(n / 2, n),
    })
}

/// Length-sum of a block facet (used by extremality tests).
pub fn length_sum(n: usize, facet: &Facet) -> Option<usize> {
    facet.arcs().iter().map(|a| even_length(n, a)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{t_max, t_min};

    #[test]
    fn path_parsing() {
        assert!("UUDD".parse::<DyckPath>().is_ok());
        assert!("UDDU".parse::<DyckPath>().is_err());
        assert!("UUD".parse::<DyckPath>().is_err());
        assert_eq!("UDUD".parse::<DyckPath>().unwrap().semilength(), 2);
    }

    #[test]
    fn extremes_map_to_extreme_paths() {
        for n in [4usize, 6, 8] {
            let k = n / 2;
            let (h, p) = to_dyck(n, &t_max(n).unwrap()).unwrap();
            assert_eq!(h, Half::X1);
            // All maximal arcs present: the sawtooth path.
            assert_eq!(p.to_string(), "UD".repeat(k - 1));
            let (h, p) = to_dyck(n, &t_min(n).unwrap()).unwrap();
            assert_eq!(h, Half::X2);
            assert_eq!(p.to_string(), "UD".repeat(k - 1));
        }
    }

    #[test]
    fn round_trip_on_explicit_facets() {
        for n in [2usize, 4, 6, 8] {
            for f in [t_max(n).unwrap(), t_min(n).unwrap()] {
                let (h, p) = to_dyck(n, &f).unwrap();
                assert_eq!(from_dyck(n, h, &p).unwrap(), f, "n={n}");
            }
        }
    }

    #[test]
    fn rejects_foreign_facets() {
        let f = Facet::new(vec![QuasiArc::Cross(1, 3), QuasiArc::Cross(2, 4)]);
        assert!(to_dyck(4, &f).is_err());
    }
}
