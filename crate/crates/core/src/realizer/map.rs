//! Planar map with clockwise dart rotations, used as the partial
//! planarization during edge insertion.
//!
//! Darts come in twin pairs `(d, d ^ 1)`. The face to the left of dart `d` is
//! traced by `d -> next[twin(d)]`, so the corner between `prev[c]` and `c` at
//! the origin of `c` lies in the face of `c`.

pub(crate) const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, Default)]
pub(crate) struct Map {
    pub origin: Vec<u32>,
    pub next: Vec<u32>,
    pub prev: Vec<u32>,
    /// Original edge carried by the dart's segment.
    pub edge: Vec<u16>,
    /// The original endpoint reached by walking along the dart's direction.
    pub toward: Vec<u32>,
    /// Some dart leaving each node, or `NONE`.
    pub node_dart: Vec<u32>,
    /// Number of real vertices; nodes past this index are crossings.
    pub real: u32,
}

#[inline]
pub(crate) fn twin(d: u32) -> u32 {
    d ^ 1
}

impl Map {
    pub fn with_vertices(n: usize) -> Self {
        Map { node_dart: vec![NONE; n], real: n as u32, ..Default::default() }
    }

    pub fn node_count(&self) -> usize {
        self.node_dart.len()
    }

    pub fn dart_count(&self) -> usize {
        self.origin.len()
    }

    pub fn face_next(&self, d: u32) -> u32 {
        self.next[twin(d) as usize]
    }

    /// Darts of the face containing the corner before `c`, starting at `c`.
    pub fn face_darts(&self, c: u32) -> Vec<u32> {
        let mut out = vec![c];
        let mut d = self.face_next(c);
        while d != c {
            out.push(d);
            d = self.face_next(d);
        }
        out
    }

    /// Darts leaving `node` in clockwise order.
    pub fn rotation(&self, node: u32) -> Vec<u32> {
        let first = self.node_dart[node as usize];
        if first == NONE {
            return Vec::new();
        }
        let mut out = vec![first];
        let mut d = self.next[first as usize];
        while d != first {
            out.push(d);
            d = self.next[d as usize];
        }
        out
    }

    fn push_dart(&mut self, origin: u32, edge: u16, toward: u32) -> u32 {
        let d = self.origin.len() as u32;
        self.origin.push(origin);
        self.next.push(d);
        self.prev.push(d);
        self.edge.push(edge);
        self.toward.push(toward);
        d
    }

    /// Places dart `x` at its origin in the corner before `c`, or alone when
    /// `c` is `NONE`.
    fn attach(&mut self, x: u32, c: u32) {
        let node = self.origin[x as usize] as usize;
        if c == NONE {
            debug_assert_eq!(self.node_dart[node], NONE);
            self.next[x as usize] = x;
            self.prev[x as usize] = x;
        } else {
            let p = self.prev[c as usize];
            self.next[p as usize] = x;
            self.prev[x as usize] = p;
            self.next[x as usize] = c;
            self.prev[c as usize] = x;
        }
        if self.node_dart[node] == NONE {
            self.node_dart[node] = x;
        }
    }

    /// Adds a segment from node `a` (corner before `ca`) to node `b` (corner
    /// before `cb`). Returns the dart leaving `a`.
    #[allow(clippy::too_many_arguments)]
    pub fn add_segment(&mut self, a: u32, ca: u32, b: u32, cb: u32, edge: u16, toward_b: u32, toward_a: u32) -> u32 {
        let x = self.push_dart(a, edge, toward_b);
        let y = self.push_dart(b, edge, toward_a);
        self.attach(x, ca);
        self.attach(y, cb);
        x
    }

    /// Splits the segment of dart `s` (from `a` to `b`) at a new crossing node
    /// `x`. Afterwards `s` runs `a -> x`, `twin(s)` runs `x -> a`, and a new
    /// pair carries `x -> b`. Returns `(x, dart x -> b)`.
    pub fn split(&mut self, s: u32) -> (u32, u32) {
        let t = twin(s);
        let b = self.origin[t as usize];
        let x = self.node_dart.len() as u32;
        self.node_dart.push(NONE);
        let edge = self.edge[s as usize];
        let n0 = self.push_dart(x, edge, self.toward[s as usize]);
        let n1 = self.push_dart(b, edge, self.toward[t as usize]);
        // n1 takes the place of t in the rotation at b.
        let (p, q) = (self.prev[t as usize], self.next[t as usize]);
        if p == t {
            self.next[n1 as usize] = n1;
            self.prev[n1 as usize] = n1;
        } else {
            self.next[p as usize] = n1;
            self.prev[n1 as usize] = p;
            self.next[n1 as usize] = q;
            self.prev[q as usize] = n1;
        }
        if self.node_dart[b as usize] == t {
            self.node_dart[b as usize] = n1;
        }
        self.origin[t as usize] = x;
        self.next[t as usize] = n0;
        self.prev[t as usize] = n0;
        self.next[n0 as usize] = t;
        self.prev[n0 as usize] = t;
        self.node_dart[x as usize] = n0;
        (x, n0)
    }

    /// Number of faces (dart orbits under `face_next`).
    #[cfg(test)]
    pub fn face_count(&self) -> usize {
        let mut seen = vec![false; self.dart_count()];
        let mut faces = 0;
        for start in 0..self.dart_count() as u32 {
            if seen[start as usize] {
                continue;
            }
            faces += 1;
            let mut d = start;
            while !seen[d as usize] {
                seen[d as usize] = true;
                d = self.face_next(d);
            }
        }
        faces
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_has_two_faces() {
        let mut m = Map::with_vertices(3);
        let d01 = m.add_segment(0, NONE, 1, NONE, 0, 1, 0);
        let d12 = m.add_segment(1, twin(d01), 2, NONE, 1, 2, 1);
        let d20 = m.add_segment(2, twin(d12), 0, d01, 2, 0, 2);
        assert_eq!(m.face_count(), 2);
        assert_eq!(m.face_darts(d01).len(), 3);
        assert_eq!(m.rotation(0).len(), 2);
        let _ = d20;
    }

    #[test]
    fn split_keeps_euler_characteristic() {
        let mut m = Map::with_vertices(2);
        let d = m.add_segment(0, NONE, 1, NONE, 0, 1, 0);
        let (x, n0) = m.split(d);
        assert_eq!(m.origin[twin(d) as usize], x);
        assert_eq!(m.origin[twin(n0) as usize], 1);
        assert_eq!(m.toward[n0 as usize], 1);
        assert_eq!(m.toward[twin(d) as usize], 0);
        // V - E + F = 3 - 2 + 1
        assert_eq!(m.face_count(), 1);
        assert_eq!(m.rotation(x).len(), 2);
    }
}
