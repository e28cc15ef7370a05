//! `WxH+X+Y` rectangle syntax for exploration bounds.

use std::str::FromStr;

use atam::{Bound, Point};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("bound {0:?} is not of the form WxH+X+Y, e.g. 3x2+0+0 or 4x4+-1+-1")]
pub struct BoundSyntaxError(String);

/// A rectangle `width` x `height` whose lower-left corner is `corner`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundSpec {
    pub width: u32,
    pub height: u32,
    pub corner: Point,
}

impl BoundSpec {
    pub fn bound(&self) -> Bound {
        Bound::rectangle(self.width, self.height, self.corner)
    }
}

impl FromStr for BoundSpec {
    type Err = BoundSyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || BoundSyntaxError(s.to_string());
        let (size, offset) = s.split_once('+').ok_or_else(err)?;
        let (w, h) = size.split_once(['x', 'X']).ok_or_else(err)?;
        let (x, y) = offset.split_once('+').ok_or_else(err)?;
        let width: u32 = w.parse().map_err(|_| err())?;
        let height: u32 = h.parse().map_err(|_| err())?;
        if width == 0 || height == 0 {
            return Err(err());
        }
        let corner = Point::new(x.parse().map_err(|_| err())?, y.parse().map_err(|_| err())?);
        Ok(BoundSpec {
            width,
            height,
            corner,
        })
    }
}
