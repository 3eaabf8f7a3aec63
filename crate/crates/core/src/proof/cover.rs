use serde::{Deserialize, Serialize};

use crate::arith::{Interval, Rational};
use crate::cert::{BoxRegion, Point, Status};
use crate::error::{Error, Result};

/// A box on which some step certified the claim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverPiece {
    pub source: String,
    #[serde(rename = "box")]
    pub region: BoxRegion,
}

/// Combinatorial check that a union of boxes contains a target box.
///
/// All piece endpoints split each axis into points and open gaps; membership
/// in every box is constant on each product cell, so testing one
/// representative per cell decides the cover exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverCheck {
    #[serde(rename = "box")]
    pub target: BoxRegion,
    pub pieces: Vec<CoverPiece>,
    pub cells: usize,
    /// Representatives of uncovered cells.
    #[serde(default, skip_serializing_if = "Vec::is_empty", with = "gaps")]
    pub gaps: Vec<Point>,
    pub status: Status,
}

mod gaps {
    use crate::cert::Point;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct W(#[serde(with = "crate::cert::serde_point")] Point);

    pub fn serialize<S: Serializer>(v: &[Point], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|p| W(p.clone())).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Point>, D::Error> {
        Ok(Vec::<W>::deserialize(d)?.into_iter().map(|w| w.0).collect())
    }
}

/// Representatives of the cells of `target` along one axis.
fn axis_cells(target: &Interval, cuts: &mut Vec<Rational>) -> Vec<Rational> {
    cuts.push(target.lo.clone());
    cuts.push(target.hi.clone());
    cuts.retain(|v| v >= &target.lo && v <= &target.hi);
    cuts.sort();
    cuts.dedup();
    let two = Rational::from_integer(2.into());
    let mut reps = Vec::new();
    for (k, v) in cuts.iter().enumerate() {
        if target.contains(v) {
            reps.push(v.clone());
        }
        if let Some(next) = cuts.get(k + 1) {
            reps.push((v + next) / &two);
        }
    }
    reps
}

pub fn check_cover(target: &BoxRegion, pieces: Vec<CoverPiece>) -> Result<CoverCheck> {
    for p in &pieces {
        if p.region.vars() != target.vars() {
            return Err(Error::usage(format!("cover piece {} has axes {:?}, expected {:?}", p.source, p.region.vars(), target.vars())));
        }
    }
    let per_axis: Vec<Vec<Rational>> = (0..target.dim())
        .map(|i| {
            let mut cuts: Vec<Rational> = pieces
                .iter()
                .flat_map(|p| {
                    let iv = &p.region.intervals()[i];
                    [iv.lo.clone(), iv.hi.clone()]
                })
                .collect();
            axis_cells(&target.intervals()[i], &mut cuts)
        })
        .collect();

    let mut gaps = Vec::new();
    let mut cells = 0;
    let mut idx = vec![0usize; per_axis.len()];
    if per_axis.iter().all(|a| !a.is_empty()) {
        loop {
            let pt: Vec<Rational> = idx.iter().zip(&per_axis).map(|(&k, a)| a[k].clone()).collect();
            cells += 1;
            if !pieces.iter().any(|p| p.region.contains(&pt)) {
                gaps.push(target.named(&pt));
            }
            // odometer increment
            let mut axis = 0;
            loop {
                if axis == idx.len() {
                    break;
                }
                idx[axis] += 1;
                if idx[axis] < per_axis[axis].len() {
                    break;
                }
                idx[axis] = 0;
                axis += 1;
            }
            if axis == idx.len() {
                break;
            }
        }
    }
    let status = if gaps.is_empty() { Status::Proved } else { Status::Refuted };
    Ok(CoverCheck { target: target.clone(), pieces, cells, gaps, status })
}

impl CoverCheck {
    pub fn replay(&self) -> Result<Status> {
        let fresh = check_cover(&self.target, self.pieces.clone())?;
        if fresh != *self {
            return Err(Error::Replay("cover check does not reproduce".into()));
        }
        Ok(fresh.status)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn piece(s: &str) -> CoverPiece {
        CoverPiece { source: s.into(), region: BoxRegion::parse(s).unwrap() }
    }

    #[test]
    fn half_open_pieces_close_up() {
        let target = BoxRegion::parse("c∈[0,2] × x∈[0,1]").unwrap();
        let ok = check_cover(&target, vec![piece("c∈[0,1) × x∈[0,1]"), piece("c∈[1,2] × x∈[0,1]")]).unwrap();
        assert_eq!(ok.status, Status::Proved);
        assert_eq!(ok.replay().unwrap(), Status::Proved);
        let gap = check_cover(&target, vec![piece("c∈[0,1) × x∈[0,1]"), piece("c∈(1,2] × x∈[0,1]")]).unwrap();
        assert_eq!(gap.status, Status::Refuted);
        assert!(gap.gaps.iter().all(|p| p[0].1 == int(1)));
    }

    #[test]
    fn point_and_edge_pieces() {
        let target = BoxRegion::parse("x∈[0,1] × y∈[0,1]").unwrap();
        let mut pieces = vec![piece("x∈(0,1) × y∈(0,1)")];
        for v in ["x∈[0,0] × y∈[0,1]", "x∈[1,1] × y∈[0,1]", "x∈[0,1] × y∈[0,0]"] {
            pieces.push(piece(v));
        }
        let c = check_cover(&target, pieces.clone()).unwrap();
        assert_eq!(c.status, Status::Refuted);
        assert_eq!(c.gaps, vec![vec![("x".to_string(), rat(1, 2)), ("y".to_string(), int(1))]]);
        pieces.push(piece("x∈[0,1] × y∈[1,1]"));
        assert_eq!(check_cover(&target, pieces).unwrap().status, Status::Proved);
    }
}
