//! JSON file formats for instances and tours.
//!
//! ```json
//! {"type":"points","order_is_given":true,"coords":[[0.0,0.0],[1.0,2.0]]}
//! {"type":"graph","n":3,"weights":[4,-1,7]}
//! {"order":[0,2,1]}
//! ```
//!
//! Graph weights list the upper triangle row by row. Points written by this
//! module parse back to identical bits.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::model::{OrderedPointSet, Point, Tour, WeightedGraph};

#[derive(Clone, Debug, PartialEq)]
pub enum Instance {
    Points(OrderedPointSet),
    Graph(WeightedGraph),
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
enum InstanceFile {
    Points {
        #[serde(default = "order_given_default")]
        order_is_given: bool,
        coords: Vec<[f64; 2]>,
    },
    Graph {
        n: usize,
        weights: Vec<i64>,
    },
}

fn order_given_default() -> bool {
    true
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TourFile {
    order: Vec<usize>,
}

/// With `order_is_given: false` the points are sorted by x, then y.
pub fn parse_instance(text: &str) -> Result<Instance> {
    match serde_json::from_str::<InstanceFile>(text)? {
        InstanceFile::Points { order_is_given, coords } => {
            let pts: Vec<Point> = coords.into_iter().map(|[x, y]| Point::new(x, y)).collect();
            let set = if order_is_given { OrderedPointSet::new(pts)? } else { OrderedPointSet::sorted_by_x(pts)? };
            Ok(Instance::Points(set))
        }
        InstanceFile::Graph { n, weights } => Ok(Instance::Graph(WeightedGraph::from_upper(n, &weights)?)),
    }
}

pub fn instance_to_json(inst: &Instance) -> String {
    let file = match inst {
        Instance::Points(p) => {
            InstanceFile::Points { order_is_given: true, coords: p.points().iter().map(|p| [p.x, p.y]).collect() }
        }
        Instance::Graph(g) => InstanceFile::Graph { n: g.n(), weights: g.upper_triangle() },
    };
    serde_json::to_string(&file).expect("instance serializes")
}

pub fn parse_tour(text: &str) -> Result<Tour> {
    Tour::new(serde_json::from_str::<TourFile>(text)?.order)
}

pub fn tour_to_json(t: &Tour) -> String {
    serde_json::to_string(&TourFile { order: t.order().to_vec() }).expect("tour serializes")
}

pub fn read_instance(path: impl AsRef<Path>) -> Result<Instance> {
    parse_instance(&std::fs::read_to_string(path)?)
}

pub fn write_instance(path: impl AsRef<Path>, inst: &Instance) -> Result<()> {
    std::fs::write(path, instance_to_json(inst) + "\n")?;
    Ok(())
}

pub fn read_tour(path: impl AsRef<Path>) -> Result<Tour> {
    parse_tour(&std::fs::read_to_string(path)?)
}

pub fn write_tour(path: impl AsRef<Path>, t: &Tour) -> Result<()> {
    std::fs::write(path, tour_to_json(t) + "\n")?;
    Ok(())
}

/// Rounds to 12 significant decimal digits for reporting.
pub fn round_sig12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_round_trip_bit_exact() {
        let pts = vec![Point::new(0.1, 1.0 / 3.0), Point::new(-2.5e-300, 7.0e15), Point::new(f64::MIN_POSITIVE, 0.7)];
        let inst = Instance::Points(OrderedPointSet::new(pts.clone()).unwrap());
        let back = parse_instance(&instance_to_json(&inst)).unwrap();
        let Instance::Points(b) = back else { panic!("kind changed") };
        for (a, b) in pts.iter().zip(b.points()) {
            assert_eq!(a.x.to_bits(), b.x.to_bits());
            assert_eq!(a.y.to_bits(), b.y.to_bits());
        }
    }

    #[test]
    fn graph_round_trip() {
        let g = WeightedGraph::from_upper(4, &[1, 2, 3, -4, 5, -6]).unwrap();
        let inst = Instance::Graph(g);
        assert_eq!(parse_instance(&instance_to_json(&inst)).unwrap(), inst);
    }

    #[test]
    fn unordered_points_are_sorted() {
        let text = r#"{"type":"points","order_is_given":false,"coords":[[2,0],[0,1],[1,5]]}"#;
        let Instance::Points(p) = parse_instance(text).unwrap() else { panic!() };
        assert_eq!(p.point(0), Point::new(0.0, 1.0));
        assert_eq!(p.point(2), Point::new(2.0, 0.0));
    }

    #[test]
    fn malformed_inputs_fail() {
        assert!(parse_instance(r#"{"type":"graph","n":3,"weights":[1,2]}"#).is_err());
        assert!(parse_instance(r#"{"type":"cube"}"#).is_err());
        assert!(parse_tour(r#"{"order":[0,0]}"#).is_err());
    }

    #[test]
    fn sig12_rounding() {
        assert_eq!(round_sig12(1.0 / 3.0), 0.333333333333);
        assert_eq!(round_sig12(123456.7890123456), 123456.789012);
    }
}
