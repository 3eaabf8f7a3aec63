use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::bernstein::BernsteinPatch;
use super::region::BoxRegion;
use super::{serde_point, Point, Relation, Status};
use crate::arith::{Interval, Rational};
use crate::error::{Error, Result};
use crate::poly::MultiPoly;

pub const DEFAULT_DEPTH_BUDGET: u32 = 24;

/// Steps toward the box centre tried when an excluded vertex violates the claim.
const WITNESS_SEARCH_STEPS: u32 = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundMethod {
    BernsteinGlobal,
    BranchTree,
    EqualitySetFactorization,
}

/// One chart of a vertex blow-up: the axis that plays the radial coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cone {
    pub axis: String,
    pub node: BoundNode,
}

/// Node of the branch-and-bound tree. Regions are given in the node's own
/// coordinates; below a blow-up these are cone coordinates on a unit cube.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "node", rename_all = "kebab-case")]
pub enum BoundNode {
    /// Settled: the largest Bernstein coefficient of `orientation·(p − B)`.
    Leaf {
        region: BoxRegion,
        #[serde(with = "crate::arith::serde_rational")]
        max: Rational,
    },
    Split {
        region: BoxRegion,
        axis: String,
        children: Vec<BoundNode>,
    },
    /// Polar blow-up at a vertex where the claim is tight; `order` is the
    /// power of the radial coordinate divided out.
    BlowUp {
        region: BoxRegion,
        #[serde(with = "serde_point")]
        vertex: Point,
        order: u32,
        cones: Vec<Cone>,
    },
    Refuted {
        region: BoxRegion,
        #[serde(with = "serde_point")]
        witness: Point,
        #[serde(with = "crate::arith::serde_rational")]
        value: Rational,
    },
    Inconclusive {
        region: BoxRegion,
        #[serde(with = "crate::arith::serde_rational")]
        max: Rational,
    },
}

impl BoundNode {
    pub fn region(&self) -> &BoxRegion {
        match self {
            BoundNode::Leaf { region, .. }
            | BoundNode::Split { region, .. }
            | BoundNode::BlowUp { region, .. }
            | BoundNode::Refuted { region, .. }
            | BoundNode::Inconclusive { region, .. } => region,
        }
    }

    fn children(&self) -> Vec<&BoundNode> {
        match self {
            BoundNode::Split { children, .. } => children.iter().collect(),
            BoundNode::BlowUp { cones, .. } => cones.iter().map(|c| &c.node).collect(),
            _ => Vec::new(),
        }
    }

    pub fn status(&self) -> Status {
        match self {
            BoundNode::Leaf { .. } => Status::Proved,
            BoundNode::Refuted { .. } => Status::Refuted,
            BoundNode::Inconclusive { .. } => Status::Inconclusive,
            _ => Status::all(self.children().into_iter().map(BoundNode::status)),
        }
    }

    pub fn depth(&self) -> u32 {
        self.children().into_iter().map(|c| c.depth() + 1).max().unwrap_or(0)
    }

    pub fn leaves(&self) -> usize {
        let ch = self.children();
        if ch.is_empty() {
            1
        } else {
            ch.into_iter().map(BoundNode::leaves).sum()
        }
    }

    fn first_refutation(&self) -> Option<&Point> {
        match self {
            BoundNode::Refuted { witness, .. } => Some(witness),
            _ => self.children().into_iter().find_map(BoundNode::first_refutation),
        }
    }
}

/// Certificate for `poly rel bound` on a box.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCertificate {
    pub poly: MultiPoly,
    #[serde(rename = "box")]
    pub region: BoxRegion,
    pub relation: Relation,
    #[serde(with = "crate::arith::serde_rational")]
    pub bound: Rational,
    pub method: BoundMethod,
    pub budget: u32,
    pub tree: BoundNode,
    pub depth: u32,
    pub leaves: usize,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "serde_point::option")]
    pub counterexample: Option<Point>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equality_set: Option<String>,
    pub status: Status,
}

struct Ctx<'a> {
    p: &'a MultiPoly,
    root: &'a BoxRegion,
    relation: Relation,
    bound: &'a Rational,
    budget: u32,
}

/// State of a subproblem: `g ≤ 0` (or `< 0`) on `region`, with `back` giving
/// the root coordinates as polynomials in the current ones.
struct Sub {
    g: MultiPoly,
    region: BoxRegion,
    back: Vec<(String, MultiPoly)>,
    /// Reference widths for choosing the split axis.
    scale: Vec<Rational>,
}

impl Ctx<'_> {
    fn strict(&self) -> bool {
        self.relation.is_strict()
    }

    fn violates(&self, gv: &Rational) -> bool {
        if self.strict() {
            !gv.is_negative_rat()
        } else {
            gv > &Rational::zero()
        }
    }

    /// Map a local point to the root box; `None` when it falls outside it.
    fn lift(&self, sub: &Sub, local: &[Rational]) -> Option<Vec<Rational>> {
        let named: Vec<(&str, Rational)> =
            sub.region.vars().iter().map(String::as_str).zip(local.iter().cloned()).collect();
        let pt: Vec<Rational> =
            sub.back.iter().map(|(_, e)| e.eval(&named).expect("closed substitution")).collect();
        self.root.contains(&pt).then_some(pt)
    }

    fn refutation(&self, sub: &Sub, local: &[Rational]) -> Option<BoundNode> {
        if !sub.region.contains(local) {
            return None;
        }
        let pt = self.lift(sub, local)?;
        let named: Vec<(&str, Rational)> =
            self.root.vars().iter().map(String::as_str).zip(pt.iter().cloned()).collect();
        let value = self.p.eval(&named).expect("root variables cover p");
        let gv = Rational::from_integer(self.relation.orientation().into()) * (&value - self.bound);
        self.violates(&gv).then(|| BoundNode::Refuted {
            region: sub.region.clone(),
            witness: self.root.named(&pt),
            value,
        })
    }

    fn eval_local(sub: &Sub, local: &[Rational]) -> Rational {
        let named: Vec<(&str, Rational)> =
            sub.region.vars().iter().map(String::as_str).zip(local.iter().cloned()).collect();
        sub.g.eval(&named).expect("region covers g")
    }

    fn solve(&self, sub: Sub, depth: u32) -> BoundNode {
        let patch = BernsteinPatch::new(&sub.g, &sub.region).expect("region covers g");
        let max = patch.max();
        if max.is_negative_rat() || (!self.strict() && max.is_zero()) {
            return BoundNode::Leaf { region: sub.region, max };
        }

        let k = sub.region.dim();
        let flat: Vec<bool> = sub.region.intervals().iter().map(Interval::is_point).collect();
        let centre = sub.region.center();
        let mut zero_vertices = Vec::new();
        for bits in 0..(1usize << k) {
            if (0..k).any(|j| flat[j] && bits >> j & 1 == 1) {
                continue;
            }
            let v = patch.corner(bits);
            let vertex = sub.region.vertex(bits);
            if self.violates(v) {
                if let Some(node) = self.refutation(&sub, &vertex) {
                    return node;
                }
                if v > &Rational::zero() {
                    let mut pt = vertex.clone();
                    for _ in 0..WITNESS_SEARCH_STEPS {
                        pt = pt.iter().zip(&centre).map(|(a, c)| (a + c) / Rational::from_integer(2.into())).collect();
                        if self.violates(&Self::eval_local(&sub, &pt)) {
                            if let Some(node) = self.refutation(&sub, &pt) {
                                return node;
                            }
                        }
                    }
                }
            }
            if v.is_zero() {
                zero_vertices.push(bits);
            }
        }
        if self.violates(&Self::eval_local(&sub, &centre)) {
            if let Some(node) = self.refutation(&sub, &centre) {
                return node;
            }
        }
        if depth >= self.budget {
            return BoundNode::Inconclusive { region: sub.region, max };
        }
        if zero_vertices.len() == 1 && flat.iter().any(|f| !f) {
            return self.blow_up(sub, zero_vertices[0], depth);
        }
        let Some(axis) = split_axis(&sub.region, &sub.scale) else {
            return BoundNode::Inconclusive { region: sub.region, max };
        };
        let (l, r) = sub.region.bisect(axis);
        let left = Sub { g: sub.g.clone(), region: l, back: sub.back.clone(), scale: sub.scale.clone() };
        let right = Sub { g: sub.g, region: r, back: sub.back, scale: sub.scale };
        let (a, b) = rayon::join(|| self.solve(left, depth + 1), || self.solve(right, depth + 1));
        let axis = sub.region.vars()[axis].clone();
        BoundNode::Split { region: sub.region, axis, children: vec![a, b] }
    }

    fn blow_up(&self, sub: Sub, bits: usize, depth: u32) -> BoundNode {
        let vertex = sub.region.vertex(bits);
        let cones = cone_charts(&sub, bits);
        let lifted = self.lift_unchecked(&sub, &vertex);
        let order = cones.first().map(|c| c.1).unwrap_or(0);
        use rayon::prelude::*;
        let nodes: Vec<Cone> = cones
            .into_par_iter()
            .map(|(axis, _, child)| Cone { node: self.solve(child, depth + 1), axis })
            .collect();
        BoundNode::BlowUp { region: sub.region, vertex: self.root.named(&lifted), order, cones: nodes }
    }

    fn lift_unchecked(&self, sub: &Sub, local: &[Rational]) -> Vec<Rational> {
        let named: Vec<(&str, Rational)> =
            sub.region.vars().iter().map(String::as_str).zip(local.iter().cloned()).collect();
        sub.back.iter().map(|(_, e)| e.eval(&named).expect("closed substitution")).collect()
    }

    /// Check a stored node against a fresh computation of its subproblem.
    fn replay(&self, sub: Sub, node: &BoundNode, depth: u32) -> Result<()> {
        if node.region() != &sub.region {
            return Err(Error::Replay(format!("node region {} differs from {}", node.region(), sub.region)));
        }
        if depth > self.budget {
            return Err(Error::Replay("tree deeper than its budget".into()));
        }
        match node {
            BoundNode::Leaf { max, .. } | BoundNode::Inconclusive { max, .. } => {
                let fresh = BernsteinPatch::new(&sub.g, &sub.region)?.max();
                if &fresh != max {
                    return Err(Error::Replay(format!("Bernstein maximum {fresh} differs from stored {max}")));
                }
                let settles = max.is_negative_rat() || (!self.strict() && max.is_zero());
                if matches!(node, BoundNode::Leaf { .. }) != settles {
                    return Err(Error::Replay(format!("leaf verdict does not follow from maximum {max}")));
                }
                Ok(())
            }
            BoundNode::Refuted { witness, value, .. } => {
                let pt: Vec<Rational> = witness.iter().map(|(_, v)| v.clone()).collect();
                let names: Vec<&str> = witness.iter().map(|(n, _)| n.as_str()).collect();
                if names != self.root.vars().iter().map(String::as_str).collect::<Vec<_>>() || !self.root.contains(&pt) {
                    return Err(Error::Replay("refutation witness lies outside the box".into()));
                }
                let named: Vec<(&str, Rational)> = names.into_iter().zip(pt).collect();
                let fresh = self.p.eval(&named)?;
                if &fresh != value || self.relation.holds(&fresh, self.bound) {
                    return Err(Error::Replay("refutation witness does not violate the claim".into()));
                }
                Ok(())
            }
            BoundNode::Split { axis, children, .. } => {
                let j = sub.region.axis(axis).ok_or_else(|| Error::Replay(format!("unknown split axis {axis}")))?;
                if children.len() != 2 {
                    return Err(Error::Replay("split node needs two children".into()));
                }
                let (l, r) = sub.region.bisect(j);
                let left = Sub { g: sub.g.clone(), region: l, back: sub.back.clone(), scale: sub.scale.clone() };
                let right = Sub { g: sub.g, region: r, back: sub.back, scale: sub.scale };
                let (a, b) = rayon::join(
                    || self.replay(left, &children[0], depth + 1),
                    || self.replay(right, &children[1], depth + 1),
                );
                a.and(b)
            }
            BoundNode::BlowUp { vertex, order, cones, .. } => {
                let k = sub.region.dim();
                let bits = (0..1usize << k)
                    .find(|&b| {
                        self.root.named(&self.lift_unchecked(&sub, &sub.region.vertex(b))) == *vertex
                            && (0..k).all(|j| !(sub.region.intervals()[j].is_point() && b >> j & 1 == 1))
                    })
                    .ok_or_else(|| Error::Replay("blow-up vertex is not a vertex of its region".into()))?;
                let fresh = cone_charts(&sub, bits);
                if fresh.len() != cones.len() {
                    return Err(Error::Replay("blow-up cone count differs".into()));
                }
                use rayon::prelude::*;
                fresh
                    .into_par_iter()
                    .zip(cones.par_iter())
                    .map(|((axis, m, child), cone)| {
                        if axis != cone.axis || m != *order {
                            return Err(Error::Replay("blow-up chart differs".into()));
                        }
                        self.replay(child, &cone.node, depth + 1)
                    })
                    .collect::<Result<Vec<()>>>()
                    .map(|_| ())
            }
        }
    }
}

trait NegExt {
    fn is_negative_rat(&self) -> bool;
}

impl NegExt for Rational {
    fn is_negative_rat(&self) -> bool {
        self < &Rational::zero()
    }
}

/// Axis with the largest width relative to `scale`; ties go to the lowest index.
fn split_axis(region: &BoxRegion, scale: &[Rational]) -> Option<usize> {
    let mut best: Option<(usize, Rational)> = None;
    for (j, (iv, s)) in region.intervals().iter().zip(scale).enumerate() {
        if s.is_zero() || iv.is_point() {
            continue;
        }
        let w = iv.width() / s;
        if best.as_ref().map_or(true, |(_, b)| &w > b) {
            best = Some((j, w));
        }
    }
    best.map(|(j, _)| j)
}

/// Blow up `sub` at the vertex selected by `bits`: returns one subproblem per
/// non-degenerate axis, with the radial power divided out.
fn cone_charts(sub: &Sub, bits: usize) -> Vec<(String, u32, Sub)> {
    let region = &sub.region;
    let vertex = region.vertex(bits);
    let vars = region.vars();
    let ivs = region.intervals();
    let active: Vec<usize> = (0..vars.len()).filter(|&j| !ivs[j].is_point()).collect();

    // Local coordinates u_j ∈ [0,1] measured from the vertex, under the same names.
    let toward = |j: usize| -> Rational {
        if bits >> j & 1 == 1 {
            -ivs[j].width()
        } else {
            ivs[j].width()
        }
    };
    let local_subs: Vec<(&str, MultiPoly)> = (0..vars.len())
        .map(|j| {
            let v = MultiPoly::constant(vertex[j].clone());
            let e = if ivs[j].is_point() { v } else { &v + &MultiPoly::var(&vars[j]).scale(&toward(j)) };
            (vars[j].as_str(), e)
        })
        .collect();
    let gl = sub.g.substitute_all(&local_subs);
    let m = gl.terms().map(|(e, _)| e.iter().sum::<u32>()).min().unwrap_or(0);

    let vertex_open = |j: usize| if bits >> j & 1 == 1 { ivs[j].hi_open } else { ivs[j].lo_open };
    let far_open = |j: usize| if bits >> j & 1 == 1 { ivs[j].lo_open } else { ivs[j].hi_open };

    active
        .iter()
        .map(|&i| {
            let radial = &vars[i];
            let gvars: Vec<String> = gl.vars().to_vec();
            let ri = gvars.iter().position(|v| v == radial);
            let mut cvars = gvars.clone();
            if ri.is_none() {
                cvars.push(radial.clone());
            }
            let r_idx = ri.unwrap_or(gvars.len());
            let terms = gl
                .terms()
                .map(|(e, c)| {
                    let total: u32 = e.iter().sum();
                    let mut ne: Vec<u32> = e.clone();
                    if ri.is_none() {
                        ne.push(0);
                    }
                    ne[r_idx] = total - m;
                    (ne, c.clone())
                })
                .collect();
            let g = MultiPoly::canonical(cvars, terms);

            // Root coordinates: u_i = s, u_j = s·t_j.
            let s = MultiPoly::var(radial);
            let cone_subs: Vec<(&str, MultiPoly)> = active
                .iter()
                .map(|&j| {
                    let u = if j == i { s.clone() } else { &s * &MultiPoly::var(&vars[j]) };
                    let e = &MultiPoly::constant(vertex[j].clone()) + &u.scale(&toward(j));
                    (vars[j].as_str(), e)
                })
                .chain(
                    (0..vars.len())
                        .filter(|j| ivs[*j].is_point())
                        .map(|j| (vars[j].as_str(), MultiPoly::constant(vertex[j].clone()))),
                )
                .collect();
            let back = sub.back.iter().map(|(n, e)| (n.clone(), e.substitute_all(&cone_subs))).collect();

            let cone_region = BoxRegion::from_parts(
                active.iter().map(|&j| vars[j].clone()).collect(),
                active
                    .iter()
                    .map(|&j| {
                        if j == i {
                            Interval::unit().with_open(true, far_open(j))
                        } else {
                            Interval::unit().with_open(vertex_open(j), false)
                        }
                    })
                    .collect(),
            );
            let scale = vec![Rational::one(); active.len()];
            (radial.clone(), m, Sub { g, region: cone_region, back, scale })
        })
        .collect()
}

fn root_sub(p: &MultiPoly, region: &BoxRegion, rel: Relation, bound: &Rational) -> Sub {
    let g = (p - &MultiPoly::constant(bound.clone())).scale(&Rational::from_integer(rel.orientation().into()));
    Sub {
        g,
        region: region.clone(),
        back: region.vars().iter().map(|v| (v.clone(), MultiPoly::var(v))).collect(),
        scale: region.intervals().iter().map(Interval::width).collect(),
    }
}

/// Certify `p rel bound` on `region` by Bernstein branch-and-bound, bisecting
/// at most `budget` levels deep. A vertex where the claim is tight is handled
/// by blowing it up into cones.
pub fn certify_box_bound(
    p: &MultiPoly,
    region: &BoxRegion,
    rel: Relation,
    bound: &Rational,
    budget: u32,
) -> Result<BoundCertificate> {
    for v in p.vars() {
        if region.axis(v).is_none() {
            return Err(Error::usage(format!("variable {v} of the polynomial is not an axis of {region}")));
        }
    }
    let ctx = Ctx { p, root: region, relation: rel, bound, budget };
    let tree = ctx.solve(root_sub(p, region, rel, bound), 0);
    let status = tree.status();
    Ok(BoundCertificate {
        poly: p.clone(),
        region: region.clone(),
        relation: rel,
        bound: bound.clone(),
        method: if matches!(tree, BoundNode::Leaf { .. }) { BoundMethod::BernsteinGlobal } else { BoundMethod::BranchTree },
        budget,
        depth: tree.depth(),
        leaves: tree.leaves(),
        counterexample: tree.first_refutation().cloned(),
        equality_set: None,
        tree,
        status,
    })
}

impl BoundCertificate {
    /// Re-check every node of the stored tree; returns the replayed status.
    pub fn replay(&self) -> Result<Status> {
        if self.method == BoundMethod::EqualitySetFactorization {
            return Err(Error::Replay("equality-set certificates replay through their identity".into()));
        }
        let ctx = Ctx { p: &self.poly, root: &self.region, relation: self.relation, bound: &self.bound, budget: self.budget };
        ctx.replay(root_sub(&self.poly, &self.region, self.relation, &self.bound), &self.tree, 0)?;
        let status = self.tree.status();
        if status != self.status || self.counterexample.as_ref() != self.tree.first_refutation() {
            return Err(Error::Replay("stored status does not match the tree".into()));
        }
        Ok(status)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn poly(s: &str) -> MultiPoly {
        MultiPoly::parse_sparse(s).unwrap()
    }

    fn unit2() -> BoxRegion {
        BoxRegion::new(vec![("x", Interval::unit()), ("y", Interval::unit())])
    }

    #[test]
    fn global_bound_needs_no_split() {
        let c = certify_box_bound(&poly("x*y"), &unit2(), Relation::Le, &int(1), 8).unwrap();
        assert_eq!(c.status, Status::Proved);
        assert_eq!(c.method, BoundMethod::BernsteinGlobal);
        assert_eq!(c.replay().unwrap(), Status::Proved);
    }

    #[test]
    fn split_tree_settles_and_replays() {
        // max of x − x^2 is 1/4, Bernstein gives 1/2 on [0,1]
        let b = BoxRegion::new(vec![("x", Interval::unit())]);
        let c = certify_box_bound(&poly("x - x^2"), &b, Relation::Lt, &rat(3, 10), 10).unwrap();
        assert_eq!(c.status, Status::Proved);
        assert_eq!(c.method, BoundMethod::BranchTree);
        assert_eq!(c.replay().unwrap(), Status::Proved);
        let json = serde_json::to_string(&c).unwrap();
        let back: BoundCertificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn violation_is_refuted_with_witness() {
        let c = certify_box_bound(&poly("x + y"), &unit2(), Relation::Le, &rat(3, 2), 8).unwrap();
        assert_eq!(c.status, Status::Refuted);
        let w = c.counterexample.clone().unwrap();
        let v = poly("x + y").eval(&[("x", w[0].1.clone()), ("y", w[1].1.clone())]).unwrap();
        assert!(v > rat(3, 2));
        assert_eq!(c.replay().unwrap(), Status::Refuted);
    }

    #[test]
    fn tight_corner_needs_blow_up() {
        // −x^2 − y^2 < 0 on the unit square without its origin corner; the
        // maximum 0 sits at the excluded vertex.
        let b = BoxRegion::new(vec![
            ("x", Interval::unit().with_open(true, false)),
            ("y", Interval::unit()),
        ]);
        let c = certify_box_bound(&poly("-x^2 - y^2 + x*y"), &b, Relation::Lt, &int(0), 6).unwrap();
        assert_eq!(c.status, Status::Proved, "{:?}", c.tree);
        assert!(matches!(c.tree, BoundNode::BlowUp { .. }));
        assert_eq!(c.replay().unwrap(), Status::Proved);
        // With the corner included the strict claim fails there.
        let closed = certify_box_bound(&poly("-x^2 - y^2 + x*y"), &unit2(), Relation::Lt, &int(0), 6).unwrap();
        assert_eq!(closed.status, Status::Refuted);
        assert_eq!(closed.counterexample.unwrap(), vec![("x".to_string(), int(0)), ("y".to_string(), int(0))]);
    }

    #[test]
    fn budget_exhaustion_is_inconclusive() {
        let b = BoxRegion::new(vec![("x", Interval::unit())]);
        let c = certify_box_bound(&poly("x - x^2"), &b, Relation::Le, &rat(1, 4), 0).unwrap();
        assert_eq!(c.status, Status::Inconclusive);
        assert!(matches!(c.tree, BoundNode::Inconclusive { .. }));
    }

    #[test]
    fn excluded_vertex_violation_found_inside() {
        let b = BoxRegion::new(vec![("x", Interval::unit().with_open(false, true))]);
        let c = certify_box_bound(&poly("x"), &b, Relation::Le, &rat(1, 2), 4).unwrap();
        assert_eq!(c.status, Status::Refuted);
        let w = &c.counterexample.unwrap()[0].1;
        assert!(w > &rat(1, 2) && w < &int(1));
    }
}
