//! Hand-built fixture helpers shared by the unit tests.

use crate::model::{Position, SensorNode, SuperNode, Target};

pub(crate) fn sensor(id: usize, x: f64, y: f64, e: f64) -> SensorNode {
    SensorNode {
        id,
        position: Position::new(x, y),
        e_init: e,
        e_remaining: e,
    }
}

pub(crate) fn supernode(id: usize, x: f64, y: f64) -> SuperNode {
    SuperNode {
        id,
        position: Position::new(x, y),
        e_remaining: 0.5,
    }
}

pub(crate) fn target(id: usize, x: f64, y: f64) -> Target {
    Target {
        id,
        position: Position::new(x, y),
    }
}
