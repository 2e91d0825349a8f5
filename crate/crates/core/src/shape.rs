//! Shape files: the on-disk JSON schema for convex bodies. One object with
//! a `kind` tag (`disk`, `ellipse`, `polygon`, `support_grid`) and the
//! parameters of that kind. Unknown fields are rejected so typos surface as
//! parse errors instead of silently ignored geometry.

use crate::body::ConvexBody;
use crate::error::{GeomError, Result};
use crate::geom::Vec2;
use crate::grid::SupportGrid;
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Clone, Debug, Deserialize, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ShapeFile {
    Disk {
        radius: f64,
    },
    Ellipse {
        a: f64,
        b: f64,
        #[serde(default)]
        center: [f64; 2],
        #[serde(default)]
        rotation: f64,
    },
    Polygon {
        vertices: Vec<[f64; 2]>,
    },
    SupportGrid {
        n: usize,
        h: Vec<f64>,
    },
}

impl ShapeFile {
    /// Validate and build the body this file describes.
    pub fn to_body(&self) -> Result<ConvexBody> {
        match self {
            ShapeFile::Disk { radius } => ConvexBody::disk(*radius),
            ShapeFile::Ellipse {
                a,
                b,
                center,
                rotation,
            } => ConvexBody::ellipse_at(*a, *b, Vec2::new(center[0], center[1]), *rotation),
            ShapeFile::Polygon { vertices } => ConvexBody::polygon(
                vertices.iter().map(|v| Vec2::new(v[0], v[1])).collect(),
            ),
            ShapeFile::SupportGrid { n, h } => {
                if *n != h.len() {
                    return Err(GeomError::invalid_shape(
                        "n",
                        format!("n = {} does not match h length {}", n, h.len()),
                    ));
                }
                SupportGrid::new(h.clone()).map(ConvexBody::Grid)
            }
        }
    }

    pub fn from_body(body: &ConvexBody) -> ShapeFile {
        match body {
            ConvexBody::Disk { radius } => ShapeFile::Disk { radius: *radius },
            ConvexBody::Ellipse {
                a,
                b,
                center,
                rotation,
            } => ShapeFile::Ellipse {
                a: *a,
                b: *b,
                center: [center.x, center.y],
                rotation: *rotation,
            },
            ConvexBody::Polygon { vertices } => ShapeFile::Polygon {
                vertices: vertices.iter().map(|v| [v.x, v.y]).collect(),
            },
            ConvexBody::Grid(g) => ShapeFile::SupportGrid {
                n: g.n(),
                h: g.values().to_vec(),
            },
        }
    }

    pub fn from_json(text: &str) -> Result<ShapeFile> {
        serde_json::from_str(text)
            .map_err(|e| GeomError::invalid_shape("shape file", e.to_string()))
    }

    pub fn to_json(&self) -> String {
        // Serialization of these variants cannot fail: no maps, no
        // non-string keys, and the floats are stored verbatim.
        serde_json::to_string_pretty(self).expect("shape serialization is infallible")
    }
}

/// Parse a shape file from disk into a validated body.
pub fn read_shape(path: &Path) -> Result<ConvexBody> {
    let text = std::fs::read_to_string(path)?;
    ShapeFile::from_json(&text)?.to_body()
}

/// Write a body to disk in the shape-file schema.
pub fn write_shape(path: &Path, body: &ConvexBody) -> Result<()> {
    let mut text = ShapeFile::from_body(body).to_json();
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}
