use serde::{Deserialize, Serialize};

use crate::geometry::Point;
use crate::Scalar;

/// The eight linear isometries of the plane that map the coordinate axes to
/// themselves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Symmetry {
    Identity,
    /// `(x, y) ↦ (x, −y)`
    FlipY,
    /// `(x, y) ↦ (y, x)`
    Swap,
    /// `(x, y) ↦ (−y, x)`
    Rotate90,
    Rotate180,
    /// `(x, y) ↦ (y, −x)`
    Rotate270,
    /// `(x, y) ↦ (−x, y)`
    FlipX,
    /// `(x, y) ↦ (−y, −x)`
    AntiSwap,
}

impl Symmetry {
    pub const ALL: [Symmetry; 8] = [
        Symmetry::Identity,
        Symmetry::FlipY,
        Symmetry::Swap,
        Symmetry::Rotate90,
        Symmetry::Rotate180,
        Symmetry::Rotate270,
        Symmetry::FlipX,
        Symmetry::AntiSwap,
    ];

    pub fn apply<T: Scalar>(self, p: &Point<T>) -> Point<T> {
        let (x, y) = (p.x.clone(), p.y.clone());
        let (x, y) = match self {
            Symmetry::Identity => (x, y),
            Symmetry::FlipY => (x, -y),
            Symmetry::Swap => (y, x),
            Symmetry::Rotate90 => (-y, x),
            Symmetry::Rotate180 => (-x, -y),
            Symmetry::Rotate270 => (y, -x),
            Symmetry::FlipX => (-x, y),
            Symmetry::AntiSwap => (-y, -x),
        };
        Point::new(x, y)
    }

    pub fn inverse(self) -> Symmetry {
        match self {
            Symmetry::Rotate90 => Symmetry::Rotate270,
            Symmetry::Rotate270 => Symmetry::Rotate90,
            other => other,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Symmetry::Identity => "identity",
            Symmetry::FlipY => "flipY",
            Symmetry::Swap => "swap",
            Symmetry::Rotate90 => "rotate90",
            Symmetry::Rotate180 => "rotate180",
            Symmetry::Rotate270 => "rotate270",
            Symmetry::FlipX => "flipX",
            Symmetry::AntiSwap => "antiSwap",
        }
    }
}
