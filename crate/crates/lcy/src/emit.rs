//! Emitters for almost-toric base diagrams and Weinstein handlebody data,
//! plus a deterministic SVG rendering of the base.
//!
//! Each interior blow-up on ray i contributes one nodal fibre; nodes sit at
//! integer parameters t = 1..m_i along v_i (a presentational convention,
//! recorded in the document), the local monodromy is the transvection
//! M_v(x) = x + det(v, x)·v fixing v, and the branch cut runs from the node
//! outward in direction v. All invariant lines pass through the origin
//! (exact-case concurrency).

use serde::{Deserialize, Serialize};

use crate::fan::Vec2;
use crate::model::ToricModel;

pub type Mat2 = [[i64; 2]; 2];

/// The shear M_v(x) = x + det(v, x)·v, as rows.
pub fn shear(v: Vec2) -> Mat2 {
    // det(v, x) = v0·x1 - v1·x0
    [
        [1 - v[0] * v[1], v[0] * v[0]],
        [-v[1] * v[1], 1 + v[0] * v[1]],
    ]
}

pub fn apply(mat: &Mat2, x: Vec2) -> Vec2 {
    [
        mat[0][0] * x[0] + mat[0][1] * x[1],
        mat[1][0] * x[0] + mat[1][1] * x[1],
    ]
}

/// v rotated a quarter turn counterclockwise, so that {v, v^perp} is
/// positively oriented.
pub fn perp(v: Vec2) -> Vec2 {
    [-v[1], v[0]]
}

/// One nodal fibre of the almost-toric base.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseNode {
    pub ray_index: usize,
    pub direction: Vec2,
    /// Integer parameter along the ray: position = t·direction.
    pub t: i64,
    pub position: Vec2,
    /// Local monodromy, rows of the transvection fixing `direction`.
    pub shear: Mat2,
    /// Branch cut: from the node outward in this direction.
    pub cut: Vec2,
}

/// Almost-toric base diagram for a model: the fan rays as invariant lines
/// through the origin, one node per interior blow-up.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlmostToricBase {
    pub k: usize,
    pub rays: Vec<Vec2>,
    pub nodes: Vec<BaseNode>,
    /// Presentational convention for node placement.
    pub convention: String,
}

pub fn emit_almost_toric(model: &ToricModel) -> AlmostToricBase {
    let fan = model.fan();
    let mut nodes = Vec::new();
    for i in 0..model.k() {
        let v = fan.ray(i);
        for t in 1..=model.m()[i] {
            nodes.push(BaseNode {
                ray_index: i,
                direction: v,
                t,
                position: [t * v[0], t * v[1]],
                shear: shear(v),
                cut: v,
            });
        }
    }
    AlmostToricBase {
        k: model.k(),
        rays: fan.rays().to_vec(),
        nodes,
        convention: "nodes at integer parameters t = 1..m_i along v_i; invariant lines concurrent through the origin".into(),
    }
}

/// One Weinstein 2-handle of the cluster presentation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttachingCurve {
    pub ray_index: usize,
    /// Attaching curve class v_i^perp in the fibre torus.
    pub class: Vec2,
    /// Co-orientation, the ray direction itself.
    pub co_orientation: Vec2,
    /// Chain length: one handle per interior blow-up on this ray.
    pub multiplicity: i64,
}

/// Handlebody datum: base cotangent-torus marker plus one attaching curve
/// per ray carrying interior blow-ups. m = 0 gives the plain disc bundle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HandlebodyData {
    pub base: String,
    pub curves: Vec<AttachingCurve>,
}

pub fn emit_handlebody(model: &ToricModel) -> HandlebodyData {
    let fan = model.fan();
    let curves = (0..model.k())
        .filter(|&i| model.m()[i] > 0)
        .map(|i| {
            let v = fan.ray(i);
            AttachingCurve {
                ray_index: i,
                class: perp(v),
                co_orientation: v,
                multiplicity: model.m()[i],
            }
        })
        .collect();
    HandlebodyData {
        base: "T*T^2 disc bundle".into(),
        curves,
    }
}

/// Deterministic SVG 1.1 picture of the base: rays from the origin, nodes as
/// crosses, branch cuts dashed. Viewport: bounding box of the nodes and the
/// origin, plus a unit margin; y points up.
pub fn emit_svg(base: &AlmostToricBase) -> String {
    let mut min = [0i64, 0];
    let mut max = [0i64, 0];
    for node in &base.nodes {
        for a in 0..2 {
            min[a] = min[a].min(node.position[a]);
            max[a] = max[a].max(node.position[a]);
        }
    }
    let (minx, miny, maxx, maxy) = (min[0] - 1, min[1] - 1, max[0] + 1, max[1] + 1);
    let (w, h) = (maxx - minx, maxy - miny);
    // long enough to leave the viewport from anywhere inside it
    let reach = w + h;
    let mut s = String::new();
    s.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         viewBox=\"{minx} {} {w} {h}\">\n",
        -maxy
    ));
    // flip y so the lattice orientation matches the picture
    s.push_str("<g transform=\"scale(1,-1)\" stroke-width=\"0.05\">\n");
    for &v in &base.rays {
        s.push_str(&format!(
            "<line x1=\"0\" y1=\"0\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
            reach * v[0],
            reach * v[1]
        ));
    }
    for node in &base.nodes {
        let [x, y] = node.position;
        s.push_str(&format!(
            "<line x1=\"{x}\" y1=\"{y}\" x2=\"{}\" y2=\"{}\" stroke=\"red\" \
             stroke-dasharray=\"0.2,0.1\"/>\n",
            x + reach * node.cut[0],
            y + reach * node.cut[1]
        ));
        s.push_str(&format!(
            "<circle cx=\"{x}\" cy=\"{y}\" r=\"0.15\" fill=\"red\"/>\n"
        ));
    }
    s.push_str("</g>\n</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::{corner_blowup, det, p2};
    use crate::model::{corner_blowup_model, ToricModel};

    fn trace(m: &Mat2) -> i64 {
        m[0][0] + m[1][1]
    }

    fn det2(m: &Mat2) -> i64 {
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    #[test]
    fn shears_are_transvections_fixing_the_ray() {
        for v in [[1, 0], [0, 1], [-1, -1], [2, -1], [-3, 5]] {
            let s = shear(v);
            assert_eq!(det2(&s), 1);
            assert_eq!(trace(&s), 2);
            assert_eq!(apply(&s, v), v);
        }
        assert_eq!(shear([1, 0]), [[1, 1], [0, 1]]);
    }

    #[test]
    fn p2_base_has_three_nodes() {
        let model = ToricModel::from_fan(p2(), vec![1, 1, 1]).unwrap();
        let base = emit_almost_toric(&model);
        assert_eq!(base.nodes.len(), 3);
        for node in &base.nodes {
            assert_eq!(node.position, node.direction);
            assert_eq!(det2(&node.shear), 1);
            assert_eq!(trace(&node.shear), 2);
            assert_eq!(apply(&node.shear, node.direction), node.direction);
        }
    }

    #[test]
    fn toric_model_has_empty_nodes_and_curves() {
        let model = ToricModel::toric(p2());
        assert!(emit_almost_toric(&model).nodes.is_empty());
        assert!(emit_handlebody(&model).curves.is_empty());
    }

    #[test]
    fn p2_attaching_classes_sum_to_zero() {
        let model = ToricModel::from_fan(p2(), vec![1, 1, 1]).unwrap();
        let h = emit_handlebody(&model);
        let classes: Vec<Vec2> = h.curves.iter().map(|c| c.class).collect();
        assert_eq!(classes, vec![[0, 1], [-1, 0], [1, -1]]);
        let sum = classes.iter().fold([0, 0], |s, c| [s[0] + c[0], s[1] + c[1]]);
        assert_eq!(sum, [0, 0]);
        for c in &h.curves {
            assert!(det(c.co_orientation, c.class) > 0);
        }
    }

    #[test]
    fn blowup_compatibility_of_perp_classes() {
        // v_E = v_i + v_{i+1}, so the attaching class of the exceptional ray
        // is the sum of its neighbours' classes.
        let fan = p2();
        for i in 0..3 {
            let blown = corner_blowup(&fan, i);
            let ve = blown.ray(i + 1);
            assert_eq!(
                perp(ve),
                [
                    perp(fan.ray(i))[0] + perp(fan.ray((i + 1) % 3))[0],
                    perp(fan.ray(i))[1] + perp(fan.ray((i + 1) % 3))[1]
                ]
            );
        }
    }

    #[test]
    fn svg_is_deterministic_and_viewport_follows_the_nodes() {
        let model = ToricModel::from_fan(p2(), vec![2, 0, 1]).unwrap();
        let base = emit_almost_toric(&model);
        let svg = emit_svg(&base);
        assert_eq!(svg, emit_svg(&base));
        // nodes at (1,0), (2,0), (-1,-1); margin 1 in each direction
        assert!(svg.contains("viewBox=\"-2 -1 5 3\""));
        assert!(svg.starts_with("<svg xmlns"));
        assert!(svg.contains("version=\"1.1\""));
        // handles through a blow-up still render
        let bigger = emit_almost_toric(&corner_blowup_model(&model, 0));
        assert_ne!(emit_svg(&bigger), svg);
    }
}
