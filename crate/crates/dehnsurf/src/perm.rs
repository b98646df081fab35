//! Small permutation and symmetry groups used by the gluing data:
//! permutations of four labels, dihedral symmetries of a square face in
//! canonical corner order, and the 48 symmetries of the combinatorial cube.

/// A permutation of `{0,1,2,3}` stored as images: `perm.0[i]` is the image of `i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Perm4(pub [u8; 4]);

impl Perm4 {
    pub const IDENTITY: Perm4 = Perm4([0, 1, 2, 3]);

    pub fn new(images: [u8; 4]) -> Option<Perm4> {
        let mut seen = [false; 4];
        for &i in &images {
            if i > 3 || seen[i as usize] {
                return None;
            }
            seen[i as usize] = true;
        }
        Some(Perm4(images))
    }

    pub fn apply(&self, i: u8) -> u8 {
        self.0[i as usize]
    }

    pub fn inverse(&self) -> Perm4 {
        let mut inv = [0u8; 4];
        for i in 0..4 {
            inv[self.0[i] as usize] = i as u8;
        }
        Perm4(inv)
    }

    /// `self` after `other`: `(self * other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Perm4) -> Perm4 {
        let mut out = [0u8; 4];
        for i in 0..4 {
            out[i] = self.0[other.0[i] as usize];
        }
        Perm4(out)
    }

    pub fn all() -> Vec<Perm4> {
        let mut out = Vec::with_capacity(24);
        for a in 0..4u8 {
            for b in 0..4u8 {
                for c in 0..4u8 {
                    for d in 0..4u8 {
                        if let Some(p) = Perm4::new([a, b, c, d]) {
                            out.push(p);
                        }
                    }
                }
            }
        }
        out
    }
}

/// Corner positions of a square face in canonical order label the corners
/// `0,1,2,3` so that the diagonals are `{0,3}` and `{1,2}` (positions adjacent
/// iff they are not diagonal partners).
///
/// A corner map is a symmetry of the square iff it maps diagonals to diagonals.
pub fn is_dihedral(p: &Perm4) -> bool {
    let a = p.0[0].min(p.0[3]);
    let b = p.0[0].max(p.0[3]);
    (a, b) == (0, 3) || (a, b) == (1, 2)
}

/// Whether a dihedral corner map exchanges the two diagonals `{0,3}` and `{1,2}`.
pub fn swaps_diagonals(p: &Perm4) -> bool {
    debug_assert!(is_dihedral(p));
    p.0[0] == 1 || p.0[0] == 2
}

pub fn all_dihedral() -> Vec<Perm4> {
    Perm4::all().into_iter().filter(is_dihedral).collect()
}

/// Cube vertices are the bitstrings `(b0,b1,b2)`, stored in a `u8` with bit `i`
/// holding coordinate `i`. Faces are labelled `2*axis + side`.

pub const CUBE_VERTICES: u8 = 8;
pub const CUBE_FACES: u8 = 6;

pub fn vertex_bit(v: u8, axis: u8) -> u8 {
    (v >> axis) & 1
}

pub fn face_axis(face: u8) -> u8 {
    face / 2
}

pub fn face_side(face: u8) -> u8 {
    face % 2
}

pub fn opposite_face(face: u8) -> u8 {
    face ^ 1
}

/// Lexicographic key of a vertex bitstring read as `(b0,b1,b2)`.
fn lex_key(v: u8) -> u8 {
    (vertex_bit(v, 0) << 2) | (vertex_bit(v, 1) << 1) | vertex_bit(v, 2)
}

/// The 4 corners of a face in canonical (lexicographic) order.
pub fn face_corners(face: u8) -> [u8; 4] {
    let axis = face_axis(face);
    let side = face_side(face);
    let mut corners: Vec<u8> = (0..CUBE_VERTICES)
        .filter(|&v| vertex_bit(v, axis) == side)
        .collect();
    corners.sort_by_key(|&v| lex_key(v));
    [corners[0], corners[1], corners[2], corners[3]]
}

/// Canonical position of a vertex on a face it belongs to.
pub fn face_position(face: u8, v: u8) -> u8 {
    face_corners(face)
        .iter()
        .position(|&c| c == v)
        .expect("vertex not on face") as u8
}

/// One of the 48 symmetries of the combinatorial cube: coordinate `j` of the
/// image is coordinate `axis_from[j]` of the source, xored with `flip` bit `j`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct CubeSym {
    pub axis_from: [u8; 3],
    pub flip: u8,
}

impl CubeSym {
    pub const IDENTITY: CubeSym = CubeSym {
        axis_from: [0, 1, 2],
        flip: 0,
    };

    pub fn apply_vertex(&self, v: u8) -> u8 {
        let mut out = 0u8;
        for j in 0..3 {
            out |= vertex_bit(v, self.axis_from[j as usize]) << j;
        }
        out ^ self.flip
    }

    pub fn apply_face(&self, face: u8) -> u8 {
        let axis = face_axis(face);
        let side = face_side(face);
        let j = self
            .axis_from
            .iter()
            .position(|&a| a == axis)
            .expect("axis") as u8;
        2 * j + (side ^ ((self.flip >> j) & 1))
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &CubeSym) -> CubeSym {
        let mut axis_from = [0u8; 3];
        let mut flip = 0u8;
        for j in 0..3usize {
            let mid = self.axis_from[j] as usize;
            axis_from[j] = other.axis_from[mid];
            let f = ((other.flip >> mid) & 1) ^ ((self.flip >> j) & 1);
            flip |= f << j;
        }
        CubeSym { axis_from, flip }
    }

    pub fn inverse(&self) -> CubeSym {
        let mut axis_from = [0u8; 3];
        let mut flip = 0u8;
        for j in 0..3usize {
            let src = self.axis_from[j] as usize;
            axis_from[src] = j as u8;
            flip |= (((self.flip >> j) & 1)) << src;
        }
        CubeSym { axis_from, flip }
    }

    pub fn all() -> Vec<CubeSym> {
        let mut out = Vec::with_capacity(48);
        let perms3 = [
            [0u8, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        for axis_from in perms3 {
            for flip in 0..8u8 {
                out.push(CubeSym { axis_from, flip });
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perm4_compose_inverse() {
        for p in Perm4::all() {
            assert_eq!(p.compose(&p.inverse()), Perm4::IDENTITY);
            assert_eq!(p.inverse().compose(&p), Perm4::IDENTITY);
        }
    }

    #[test]
    fn dihedral_count() {
        assert_eq!(all_dihedral().len(), 8);
        // Transposing two adjacent corners only is not a square symmetry.
        assert!(!is_dihedral(&Perm4([1, 0, 2, 3])));
    }

    #[test]
    fn cube_sym_group() {
        let all = CubeSym::all();
        assert_eq!(all.len(), 48);
        for s in &all {
            let inv = s.inverse();
            for v in 0..CUBE_VERTICES {
                assert_eq!(inv.apply_vertex(s.apply_vertex(v)), v);
            }
            for f in 0..CUBE_FACES {
                assert_eq!(inv.apply_face(s.apply_face(f)), f);
            }
        }
        // Symmetries carry faces to faces compatibly with corners.
        for s in &all {
            for f in 0..CUBE_FACES {
                let img = s.apply_face(f);
                let mut expect: Vec<u8> =
                    face_corners(f).iter().map(|&v| s.apply_vertex(v)).collect();
                expect.sort_by_key(|&v| lex_key(v));
                assert_eq!(expect, face_corners(img).to_vec());
            }
        }
    }

    #[test]
    fn cube_sym_compose_acts() {
        let all = CubeSym::all();
        for a in &all[..12] {
            for b in &all[..12] {
                let c = a.compose(b);
                for v in 0..CUBE_VERTICES {
                    assert_eq!(c.apply_vertex(v), a.apply_vertex(b.apply_vertex(v)));
                }
            }
        }
    }

    #[test]
    fn face_corner_order_is_lexicographic() {
        // Face 0 is {v : b0 = 0}; lex order of (b0,b1,b2) gives
        // (0,0,0),(0,0,1),(0,1,0),(0,1,1).
        assert_eq!(face_corners(0), [0b000, 0b100, 0b010, 0b110]);
        assert_eq!(face_corners(1), [0b001, 0b101, 0b011, 0b111]);
    }
}
