//! Mosaic tiles, connection-point masks, and grid predicates.
//!
//! A mosaic tile is a unit square carrying a fragment of polygon; the
//! fragment meets the tile boundary only at edge midpoints, called
//! connection points. Seven tiles exist: the blank tile `T1` and six
//! tiles with exactly two connection points each. A grid of tiles is
//! *suitably connected* when adjacent tiles agree about the connection
//! point on their shared edge, and it is a *polygon mosaic* when in
//! addition no connection point touches the outer boundary.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// One of the seven mosaic tiles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MosaicTile {
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
    T7,
}

/// All tiles in canonical order.
pub const ALL_TILES: [MosaicTile; 7] = [
    MosaicTile::T1,
    MosaicTile::T2,
    MosaicTile::T3,
    MosaicTile::T4,
    MosaicTile::T5,
    MosaicTile::T6,
    MosaicTile::T7,
];

/// Presence of a connection point on the left, top, right and bottom
/// edge midpoints of a tile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CpMask {
    pub l: bool,
    pub t: bool,
    pub r: bool,
    pub b: bool,
}

impl CpMask {
    pub const fn count(self) -> u32 {
        self.l as u32 + self.t as u32 + self.r as u32 + self.b as u32
    }
}

/// Connection-point mask of a tile, per the canonical assignment
/// T1=none, T2=(l,b), T3=(r,b), T4=(t,r), T5=(l,t), T6=(l,r), T7=(t,b).
pub const fn cp_mask(tile: MosaicTile) -> CpMask {
    const fn m(l: bool, t: bool, r: bool, b: bool) -> CpMask {
        CpMask { l, t, r, b }
    }
    match tile {
        MosaicTile::T1 => m(false, false, false, false),
        MosaicTile::T2 => m(true, false, false, true),
        MosaicTile::T3 => m(false, false, true, true),
        MosaicTile::T4 => m(false, true, true, false),
        MosaicTile::T5 => m(true, true, false, false),
        MosaicTile::T6 => m(true, false, true, false),
        MosaicTile::T7 => m(false, true, false, true),
    }
}

/// Tiles whose left/top connection points equal the given pair, in
/// ascending tile order.
///
/// There are two matches unless both edges carry a connection point, in
/// which case `T5` is the unique match. Within each two-element result,
/// exactly one tile is r-cp and exactly one is b-cp.
pub const fn tiles_matching(l: bool, t: bool) -> &'static [MosaicTile] {
    match (l, t) {
        (false, false) => &[MosaicTile::T1, MosaicTile::T3],
        (true, false) => &[MosaicTile::T2, MosaicTile::T6],
        (false, true) => &[MosaicTile::T4, MosaicTile::T7],
        (true, true) => &[MosaicTile::T5],
    }
}

impl fmt::Display for MosaicTile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MosaicTile::T1 => "T1",
            MosaicTile::T2 => "T2",
            MosaicTile::T3 => "T3",
            MosaicTile::T4 => "T4",
            MosaicTile::T5 => "T5",
            MosaicTile::T6 => "T6",
            MosaicTile::T7 => "T7",
        };
        f.write_str(s)
    }
}

impl MosaicTile {
    fn from_token(tok: &str) -> Option<MosaicTile> {
        match tok {
            "T1" => Some(MosaicTile::T1),
            "T2" => Some(MosaicTile::T2),
            "T3" => Some(MosaicTile::T3),
            "T4" => Some(MosaicTile::T4),
            "T5" => Some(MosaicTile::T5),
            "T6" => Some(MosaicTile::T6),
            "T7" => Some(MosaicTile::T7),
            _ => None,
        }
    }
}

/// An m×n matrix of mosaic tiles, indexed (row, col) starting at 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MosaicGrid {
    rows: usize,
    cols: usize,
    entries: Vec<MosaicTile>,
}

/// Classification of a grid by the suitably-connected and polygon
/// predicates. `Trivial` means the all-`T1` grid, which is also a
/// polygon mosaic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridClass {
    NotSuitablyConnected,
    SuitablyConnected,
    PolygonMosaic,
    Trivial,
}

impl GridClass {
    pub fn as_str(self) -> &'static str {
        match self {
            GridClass::NotSuitablyConnected => "not-suitably-connected",
            GridClass::SuitablyConnected => "suitably-connected",
            GridClass::PolygonMosaic => "polygon-mosaic",
            GridClass::Trivial => "trivial",
        }
    }
}

impl MosaicGrid {
    /// Builds a grid from row-major entries. Rejects zero dimensions and
    /// entry counts that do not match rows*cols.
    pub fn new(rows: usize, cols: usize, entries: Vec<MosaicTile>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Domain(format!(
                "grid dimensions must be positive, got {rows}x{cols}"
            )));
        }
        if entries.len() != rows * cols {
            return Err(Error::Domain(format!(
                "entry count {} does not match {rows}x{cols}",
                entries.len()
            )));
        }
        Ok(MosaicGrid {
            rows,
            cols,
            entries,
        })
    }

    /// Grid of the given size with every entry `T1`.
    pub fn trivial(rows: usize, cols: usize) -> Result<Self> {
        MosaicGrid::new(rows, cols, vec![MosaicTile::T1; rows * cols])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Tile at (row, col), 1-indexed.
    pub fn get(&self, i: usize, j: usize) -> MosaicTile {
        assert!(
            (1..=self.rows).contains(&i) && (1..=self.cols).contains(&j),
            "index ({i},{j}) out of bounds for {}x{} grid",
            self.rows,
            self.cols
        );
        self.entries[(i - 1) * self.cols + (j - 1)]
    }

    /// True iff every adjacent pair of tiles agrees about the connection
    /// point on the shared edge.
    pub fn is_suitably_connected(&self) -> bool {
        for i in 1..=self.rows {
            for j in 1..=self.cols {
                let m = cp_mask(self.get(i, j));
                if j < self.cols && m.r != cp_mask(self.get(i, j + 1)).l {
                    return false;
                }
                if i < self.rows && m.b != cp_mask(self.get(i + 1, j)).t {
                    return false;
                }
            }
        }
        true
    }

    /// True iff the grid is suitably connected and no tile exposes a
    /// connection point on the outer boundary. The all-`T1` grid
    /// qualifies (it is the trivial mosaic).
    pub fn is_polygon_mosaic(&self) -> bool {
        if !self.is_suitably_connected() {
            return false;
        }
        for j in 1..=self.cols {
            if cp_mask(self.get(1, j)).t || cp_mask(self.get(self.rows, j)).b {
                return false;
            }
        }
        for i in 1..=self.rows {
            if cp_mask(self.get(i, 1)).l || cp_mask(self.get(i, self.cols)).r {
                return false;
            }
        }
        true
    }

    pub fn is_trivial(&self) -> bool {
        self.entries.iter().all(|&t| t == MosaicTile::T1)
    }

    pub fn classify(&self) -> GridClass {
        if self.is_trivial() {
            GridClass::Trivial
        } else if self.is_polygon_mosaic() {
            GridClass::PolygonMosaic
        } else if self.is_suitably_connected() {
            GridClass::SuitablyConnected
        } else {
            GridClass::NotSuitablyConnected
        }
    }
}

impl fmt::Display for MosaicGrid {
    /// Rows separated by newlines, tiles as space-separated tokens.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.rows {
            if i > 1 {
                writeln!(f)?;
            }
            for j in 1..=self.cols {
                if j > 1 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        Ok(())
    }
}

impl FromStr for MosaicGrid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut entries = Vec::new();
        let mut cols = 0usize;
        let mut rows = 0usize;
        for (ri, line) in s.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            rows += 1;
            let mut width = 0usize;
            for (ci, tok) in line.split_whitespace().enumerate() {
                match MosaicTile::from_token(tok) {
                    Some(t) => entries.push(t),
                    None => {
                        return Err(Error::Parse {
                            row: ri + 1,
                            col: ci + 1,
                            msg: format!("unknown tile token {tok:?}"),
                        })
                    }
                }
                width += 1;
            }
            if rows == 1 {
                cols = width;
            } else if width != cols {
                return Err(Error::Parse {
                    row: ri + 1,
                    col: width.min(cols) + 1,
                    msg: format!("row has {width} tiles, expected {cols}"),
                });
            }
        }
        if rows == 0 || cols == 0 {
            return Err(Error::Parse {
                row: 1,
                col: 1,
                msg: "empty grid".to_string(),
            });
        }
        MosaicGrid::new(rows, cols, entries)
    }
}
