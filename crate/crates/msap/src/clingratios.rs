//! Cling mosaics and cp-ratios.
//!
//! A cling mosaic is the small set of already-placed tiles adjacent to a
//! leading tile's left edge (l-cling, kinds `U1..U5`) or top edge
//! (t-cling, kinds `V1..V8`). Conditioned on the connection points of its
//! free boundary edges (the *contact edges*), the fraction of tile
//! fillings that put a connection point on the output edge — the leading
//! tile's left or top edge — is the *cp-ratio*. The minimum and maximum
//! cp-ratio of each kind bound the growth ratio of interior positions.
//!
//! Kinds other than `U1` and `V1` arise when the leading tile sits near
//! the boundary of the mosaic system: missing cells disappear from the
//! layout and edges on the system boundary are forced cp-free.
//!
//! Ratios are computed by direct exhaustive enumeration over fillings.
//! The counting matrices of [`counting_matrices`] tabulate the same
//! enumeration conditioned on the output edges; they serve as an
//! independent cross-check of the layout (see
//! [`expected_counting_matrices`]).

use crate::error::{Error, Result};
use crate::tiles::{cp_mask, ALL_TILES};
use crate::ExactRational;
use num_traits::One;

/// Edge of a cell, viewed from the cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Top,
    Right,
    Bottom,
}

/// An edge in a cling layout: (index into `cells`, side of that cell).
pub type EdgeRef = (usize, Side);

/// The thirteen cling kinds: five l-cling, eight t-cling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClingKind {
    U1,
    U2,
    U3,
    U4,
    U5,
    V1,
    V2,
    V3,
    V4,
    V5,
    V6,
    V7,
    V8,
}

pub const ALL_KINDS: [ClingKind; 13] = [
    ClingKind::U1,
    ClingKind::U2,
    ClingKind::U3,
    ClingKind::U4,
    ClingKind::U5,
    ClingKind::V1,
    ClingKind::V2,
    ClingKind::V3,
    ClingKind::V4,
    ClingKind::V5,
    ClingKind::V6,
    ClingKind::V7,
    ClingKind::V8,
];

impl ClingKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ClingKind::U1 => "U1",
            ClingKind::U2 => "U2",
            ClingKind::U3 => "U3",
            ClingKind::U4 => "U4",
            ClingKind::U5 => "U5",
            ClingKind::V1 => "V1",
            ClingKind::V2 => "V2",
            ClingKind::V3 => "V3",
            ClingKind::V4 => "V4",
            ClingKind::V5 => "V5",
            ClingKind::V6 => "V6",
            ClingKind::V7 => "V7",
            ClingKind::V8 => "V8",
        }
    }

    /// True for the l-cling kinds `U1..U5`.
    pub fn is_l_cling(self) -> bool {
        matches!(
            self,
            ClingKind::U1 | ClingKind::U2 | ClingKind::U3 | ClingKind::U4 | ClingKind::U5
        )
    }
}

/// Geometry of one cling kind.
#[derive(Debug, Clone)]
pub struct ClingType {
    pub kind: ClingKind,
    /// Offsets (drow, dcol) of the existing cells relative to the leading
    /// tile at (0,0).
    pub cells: Vec<(i32, i32)>,
    /// Outer edges lying on the mosaic-system boundary, forced cp-free.
    pub forced_x: Vec<EdgeRef>,
    /// Contact edges e1, e2, ... in canonical order.
    pub contacts: Vec<EdgeRef>,
    /// The edge whose connection point the cp-ratio measures: the leading
    /// tile's left edge for U kinds, its top edge for V kinds.
    pub output: EdgeRef,
}

/// All thirteen cling types.
///
/// The l-cling layout uses up to three cells left of the leading tile,
/// A=(0,-2), B=(0,-1), C=(1,-2); the t-cling layout up to five cells
/// above it, D=(-2,0), E=(-2,1), F=(-2,2), G=(-1,0), H=(-1,1). Boundary
/// variants drop missing cells and force system-boundary edges cp-free:
/// U2 (leading tile in row m-1) forces C's bottom edge, U3 (col 3)
/// forces the left edges of A and C, U4 both, U5 (col 2) keeps only B;
/// V2 (col n-2) forces F's right edge, V3 (row 3) the top edges of D, E,
/// F, V4 both, V5 (col n-1) drops F and forces the right edges of E and
/// H, V6 additionally (row 3) the top edges of D and E, V7 (row 2) keeps
/// only G and H, V8 additionally (col n-1) forces H's right edge.
pub fn cling_catalog() -> Vec<ClingType> {
    use ClingKind::*;
    use Side::*;

    let u_cells = vec![(0, -2), (0, -1), (1, -2)]; // A, B, C
    let (ua, ub, uc) = (0usize, 1usize, 2usize);
    let u_contacts_full = vec![(ub, Top), (ua, Top), (ua, Left), (uc, Left)];
    let u_contacts_wall = vec![(ub, Top), (ua, Top)];

    let v_cells = vec![(-2, 0), (-2, 1), (-2, 2), (-1, 0), (-1, 1)]; // D, E, F, G, H
    let (vd, ve, vf, vg, _vh) = (0usize, 1usize, 2usize, 3usize, 4usize);
    let v_contacts_full = vec![(vg, Left), (vd, Left), (vd, Top), (ve, Top), (vf, Top)];
    let v_contacts_wall = vec![(vg, Left), (vd, Left)];

    let v5_cells = vec![(-2, 0), (-2, 1), (-1, 0), (-1, 1)]; // D, E, G, H
    let (wd, we, wg, wh) = (0usize, 1usize, 2usize, 3usize);

    let v7_cells = vec![(-1, 0), (-1, 1)]; // G, H
    let (xg, xh) = (0usize, 1usize);

    vec![
        ClingType {
            kind: U1,
            cells: u_cells.clone(),
            forced_x: vec![],
            contacts: u_contacts_full.clone(),
            output: (ub, Right),
        },
        ClingType {
            kind: U2,
            cells: u_cells.clone(),
            forced_x: vec![(uc, Bottom)],
            contacts: u_contacts_full,
            output: (ub, Right),
        },
        ClingType {
            kind: U3,
            cells: u_cells.clone(),
            forced_x: vec![(ua, Left), (uc, Left)],
            contacts: u_contacts_wall.clone(),
            output: (ub, Right),
        },
        ClingType {
            kind: U4,
            cells: u_cells,
            forced_x: vec![(ua, Left), (uc, Left), (uc, Bottom)],
            contacts: u_contacts_wall,
            output: (ub, Right),
        },
        ClingType {
            kind: U5,
            cells: vec![(0, -1)],
            forced_x: vec![(0, Left)],
            contacts: vec![(0, Top)],
            output: (0, Right),
        },
        ClingType {
            kind: V1,
            cells: v_cells.clone(),
            forced_x: vec![],
            contacts: v_contacts_full.clone(),
            output: (vg, Bottom),
        },
        ClingType {
            kind: V2,
            cells: v_cells.clone(),
            forced_x: vec![(vf, Right)],
            contacts: v_contacts_full,
            output: (vg, Bottom),
        },
        ClingType {
            kind: V3,
            cells: v_cells.clone(),
            forced_x: vec![(vd, Top), (ve, Top), (vf, Top)],
            contacts: v_contacts_wall.clone(),
            output: (vg, Bottom),
        },
        ClingType {
            kind: V4,
            cells: v_cells,
            forced_x: vec![(vd, Top), (ve, Top), (vf, Top), (vf, Right)],
            contacts: v_contacts_wall,
            output: (vg, Bottom),
        },
        ClingType {
            kind: V5,
            cells: v5_cells.clone(),
            forced_x: vec![(we, Right), (wh, Right)],
            contacts: vec![(wg, Left), (wd, Left), (wd, Top), (we, Top)],
            output: (wg, Bottom),
        },
        ClingType {
            kind: V6,
            cells: v5_cells,
            forced_x: vec![(we, Right), (wh, Right), (wd, Top), (we, Top)],
            contacts: vec![(wg, Left), (wd, Left)],
            output: (wg, Bottom),
        },
        ClingType {
            kind: V7,
            cells: v7_cells.clone(),
            forced_x: vec![(xg, Top), (xh, Top)],
            contacts: vec![(xg, Left)],
            output: (xg, Bottom),
        },
        ClingType {
            kind: V8,
            cells: v7_cells,
            forced_x: vec![(xg, Top), (xh, Top), (xh, Right)],
            contacts: vec![(xg, Left)],
            output: (xg, Bottom),
        },
    ]
}

fn edge_value(tiles: &[crate::tiles::MosaicTile], edge: EdgeRef) -> bool {
    let m = cp_mask(tiles[edge.0]);
    match edge.1 {
        Side::Left => m.l,
        Side::Top => m.t,
        Side::Right => m.r,
        Side::Bottom => m.b,
    }
}

/// Enumerates every suitably connected filling of `cells` that keeps the
/// `forced_x` edges cp-free, tallied by the bit pattern of the `labels`
/// edges (labels[0] is the most significant bit, x=0, o=1).
fn enumerate_fillings(cells: &[(i32, i32)], forced_x: &[EdgeRef], labels: &[EdgeRef]) -> Vec<u64> {
    let k = cells.len();
    // internal shared edges: (left cell, right cell) and (upper, lower)
    let mut horizontal = Vec::new();
    let mut vertical = Vec::new();
    for a in 0..k {
        for b in 0..k {
            let (ar, ac) = cells[a];
            let (br, bc) = cells[b];
            if br == ar && bc == ac + 1 {
                horizontal.push((a, b));
            }
            if bc == ac && br == ar + 1 {
                vertical.push((a, b));
            }
        }
    }

    let mut counts = vec![0u64; 1 << labels.len()];
    let mut assign = vec![0usize; k];
    'next: loop {
        let tiles: Vec<_> = assign.iter().map(|&x| ALL_TILES[x]).collect();
        let consistent = horizontal
            .iter()
            .all(|&(a, b)| cp_mask(tiles[a]).r == cp_mask(tiles[b]).l)
            && vertical
                .iter()
                .all(|&(a, b)| cp_mask(tiles[a]).b == cp_mask(tiles[b]).t)
            && forced_x.iter().all(|&e| !edge_value(&tiles, e));
        if consistent {
            let mut idx = 0usize;
            for &e in labels {
                idx = (idx << 1) | edge_value(&tiles, e) as usize;
            }
            counts[idx] += 1;
        }
        for slot in (0..k).rev() {
            assign[slot] += 1;
            if assign[slot] < ALL_TILES.len() {
                continue 'next;
            }
            assign[slot] = 0;
        }
        break;
    }
    counts
}

fn pattern_and_output_counts(ty: &ClingType) -> Vec<u64> {
    let mut labels = ty.contacts.clone();
    labels.push(ty.output);
    enumerate_fillings(&ty.cells, &ty.forced_x, &labels)
}

/// cp-ratio of a cling type for one assignment of its contact edges:
/// fillings with a connection point on the output edge over all fillings.
/// `Ok(None)` when no filling realizes the pattern.
pub fn cp_ratio(ty: &ClingType, contact_pattern: &[bool]) -> Result<Option<ExactRational>> {
    if contact_pattern.len() != ty.contacts.len() {
        return Err(Error::PatternLengthMismatch {
            expected: ty.contacts.len(),
            got: contact_pattern.len(),
        });
    }
    let counts = pattern_and_output_counts(ty);
    let mut base = 0usize;
    for &bit in contact_pattern {
        base = (base << 1) | bit as usize;
    }
    let with_cp = counts[(base << 1) | 1];
    let total = counts[base << 1] + with_cp;
    if total == 0 {
        return Ok(None);
    }
    Ok(Some(ExactRational::new(with_cp.into(), total.into())))
}

/// Minimum and maximum cp-ratio over the realizable contact patterns of
/// a cling kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioPair {
    pub min: ExactRational,
    pub max: ExactRational,
}

impl RatioPair {
    pub fn new(min: ExactRational, max: ExactRational) -> Self {
        assert!(min <= max);
        RatioPair { min, max }
    }

    fn from_fractions(fractions: impl IntoIterator<Item = (u64, u64)>) -> Self {
        let mut min: Option<ExactRational> = None;
        let mut max: Option<ExactRational> = None;
        for (num, den) in fractions {
            if den == 0 {
                continue;
            }
            let r = ExactRational::new(num.into(), den.into());
            if min.as_ref().is_none_or(|m| &r < m) {
                min = Some(r.clone());
            }
            if max.as_ref().is_none_or(|m| &r > m) {
                max = Some(r);
            }
        }
        RatioPair::new(min.expect("no realizable pattern"), max.unwrap())
    }
}

/// Exhaustive min/max cp-ratio of one cling type over all contact
/// patterns with at least one filling.
pub fn cp_ratio_pair(ty: &ClingType) -> RatioPair {
    let counts = pattern_and_output_counts(ty);
    RatioPair::from_fractions((0..1usize << ty.contacts.len()).map(|base| {
        let with_cp = counts[(base << 1) | 1];
        (with_cp, counts[base << 1] + with_cp)
    }))
}

/// Computed pairs for all thirteen kinds, in `ALL_KINDS` order.
pub fn cp_ratio_pairs() -> Vec<(ClingKind, RatioPair)> {
    cling_catalog()
        .iter()
        .map(|ty| (ty.kind, cp_ratio_pair(ty)))
        .collect()
}

/// Expected cp-ratio pairs, used by the verifier as the cross-check
/// reference for [`cp_ratio_pairs`].
pub fn expected_pairs() -> Vec<(ClingKind, RatioPair)> {
    use ClingKind::*;
    let pair = |a: (i64, i64), b: (i64, i64)| {
        RatioPair::new(
            ExactRational::new(a.0.into(), a.1.into()),
            ExactRational::new(b.0.into(), b.1.into()),
        )
    };
    vec![
        (U1, pair((1, 4), (1, 2))),
        (U2, pair((1, 3), (1, 2))),
        (U3, pair((1, 3), (1, 2))),
        (U4, pair((1, 3), (1, 2))),
        (U5, pair((1, 2), (1, 2))),
        (V1, pair((1, 4), (3, 5))),
        (V2, pair((1, 4), (4, 7))),
        (V3, pair((4, 11), (1, 2))),
        (V4, pair((4, 11), (1, 2))),
        (V5, pair((1, 3), (1, 2))),
        (V6, pair((1, 3), (1, 2))),
        (V7, pair((1, 2), (1, 2))),
        (V8, pair((1, 2), (1, 2))),
    ]
}

/// A labeled matrix of suitably-connected-filling counts, rows indexed by
/// two edges and columns by the remaining labeled edges, both in the
/// canonical x-before-o order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountMatrix {
    pub name: String,
    pub entries: Vec<Vec<u64>>,
}

impl CountMatrix {
    fn new(name: &str, entries: Vec<Vec<u64>>) -> Self {
        CountMatrix {
            name: name.to_string(),
            entries,
        }
    }
}

/// The ten counting matrices tabulating cling fillings conditioned on the
/// output edges: N_xx, N_xo, N_ox, N_oo over the three-cell l-cling
/// layout keyed by its two free output edges (c1 = the leading tile's
/// left edge, c2 = the bottom edge of the lower-left cell), N1_* / N2_*
/// over the five-cell t-cling layout (plain, and with the upper-right
/// corner edge on the boundary), and N3_* over the four-cell layout.
pub fn counting_matrices() -> Vec<CountMatrix> {
    use Side::*;
    let catalog = cling_catalog();
    let u1 = &catalog[0];
    let v1 = &catalog[5];
    let v2 = &catalog[6];
    let v5 = &catalog[9];

    // l-cling cells with both output edges labeled: e1..e4, c1, c2
    let mut w_labels = u1.contacts.clone();
    w_labels.push((1, Right));
    w_labels.push((2, Bottom));
    let w = enumerate_fillings(&u1.cells, &u1.forced_x, &w_labels);
    let w_matrix = |c1: usize, c2: usize| -> Vec<Vec<u64>> {
        (0..4)
            .map(|row| {
                (0..4)
                    .map(|col| w[(row << 4) | (col << 2) | (c1 << 1) | c2])
                    .collect()
            })
            .collect()
    };

    // 4x8 matrices over the five contact edges of V1/V2, keyed by the
    // output edge value
    let v_matrix = |ty: &ClingType, out: usize| -> Vec<Vec<u64>> {
        let counts = pattern_and_output_counts(ty);
        (0..4)
            .map(|row| {
                (0..8)
                    .map(|col| counts[(row << 4) | (col << 1) | out])
                    .collect()
            })
            .collect()
    };

    // 4x4 matrices over the four contact edges of V5
    let v5_matrix = |out: usize| -> Vec<Vec<u64>> {
        let counts = pattern_and_output_counts(v5);
        (0..4)
            .map(|row| {
                (0..4)
                    .map(|col| counts[(row << 3) | (col << 1) | out])
                    .collect()
            })
            .collect()
    };

    vec![
        CountMatrix::new("N_xx", w_matrix(0, 0)),
        CountMatrix::new("N_xo", w_matrix(0, 1)),
        CountMatrix::new("N_ox", w_matrix(1, 0)),
        CountMatrix::new("N_oo", w_matrix(1, 1)),
        CountMatrix::new("N1_x", v_matrix(v1, 0)),
        CountMatrix::new("N1_o", v_matrix(v1, 1)),
        CountMatrix::new("N2_x", v_matrix(v2, 0)),
        CountMatrix::new("N2_o", v_matrix(v2, 1)),
        CountMatrix::new("N3_x", v5_matrix(0)),
        CountMatrix::new("N3_o", v5_matrix(1)),
    ]
}

/// Expected entries of the ten counting matrices, used by the verifier as
/// the cross-check reference for [`counting_matrices`].
pub fn expected_counting_matrices() -> Vec<CountMatrix> {
    vec![
        CountMatrix::new(
            "N_xx",
            vec![
                vec![2, 2, 2, 2],
                vec![2, 2, 1, 1],
                vec![2, 2, 2, 2],
                vec![2, 2, 1, 1],
            ],
        ),
        CountMatrix::new(
            "N_xo",
            vec![
                vec![2, 1, 2, 1],
                vec![2, 1, 1, 1],
                vec![2, 1, 2, 1],
                vec![2, 1, 1, 1],
            ],
        ),
        CountMatrix::new(
            "N_ox",
            vec![
                vec![2, 2, 2, 2],
                vec![2, 2, 1, 1],
                vec![1, 1, 1, 1],
                vec![1, 1, 1, 1],
            ],
        ),
        CountMatrix::new(
            "N_oo",
            vec![
                vec![2, 1, 2, 1],
                vec![2, 1, 1, 1],
                vec![1, 1, 1, 0],
                vec![1, 0, 1, 1],
            ],
        ),
        CountMatrix::new(
            "N1_x",
            vec![
                vec![14, 10, 12, 10, 14, 11, 10, 8],
                vec![14, 11, 10, 8, 8, 6, 8, 6],
                vec![14, 11, 10, 8, 14, 10, 12, 10],
                vec![14, 10, 12, 10, 6, 5, 6, 4],
            ],
        ),
        CountMatrix::new(
            "N1_o",
            vec![
                vec![14, 11, 10, 8, 14, 10, 12, 10],
                vec![14, 10, 12, 10, 6, 5, 6, 4],
                vec![8, 6, 8, 6, 8, 6, 4, 4],
                vec![8, 6, 4, 4, 8, 6, 8, 6],
            ],
        ),
        CountMatrix::new(
            "N2_x",
            vec![
                vec![7, 7, 6, 6, 7, 7, 5, 5],
                vec![7, 7, 5, 5, 4, 4, 4, 4],
                vec![7, 7, 5, 5, 7, 7, 6, 6],
                vec![7, 7, 6, 6, 3, 3, 3, 3],
            ],
        ),
        CountMatrix::new(
            "N2_o",
            vec![
                vec![7, 7, 5, 5, 7, 7, 6, 6],
                vec![7, 7, 6, 6, 3, 3, 3, 3],
                vec![4, 4, 4, 4, 4, 4, 2, 2],
                vec![4, 4, 2, 2, 4, 4, 4, 4],
            ],
        ),
        CountMatrix::new(
            "N3_x",
            vec![
                vec![2, 2, 2, 2],
                vec![2, 2, 1, 1],
                vec![2, 2, 2, 2],
                vec![2, 2, 1, 1],
            ],
        ),
        CountMatrix::new(
            "N3_o",
            vec![
                vec![2, 2, 2, 2],
                vec![2, 2, 1, 1],
                vec![1, 1, 1, 1],
                vec![1, 1, 1, 1],
            ],
        ),
    ]
}

/// Growth-ratio interval implied by an (l-cling, t-cling) pair of
/// cp-ratio pairs: (2 - u.max * v.max, 2 - u.min * v.min).
pub fn ratio_interval(u: &RatioPair, v: &RatioPair) -> (ExactRational, ExactRational) {
    let two = ExactRational::one() + ExactRational::one();
    (two.clone() - &u.max * &v.max, two - &u.min * &v.min)
}
