//! Marching-squares level extraction on a rectilinear grid.

use std::collections::HashMap;

use serde::Serialize;

/// Connected piece of a level set, in axis coordinates.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Polyline {
    pub points: Vec<(f64, f64)>,
    /// First and last points coincide.
    pub closed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Edge {
    /// (ix, iy)–(ix+1, iy)
    Horizontal(usize, usize),
    /// (ix, iy)–(ix, iy+1)
    Vertical(usize, usize),
}

struct Grid<'a> {
    x: &'a [f64],
    y: &'a [f64],
    values: &'a [f64],
    level: f64,
}

impl Grid<'_> {
    fn at(&self, ix: usize, iy: usize) -> f64 {
        self.values[iy * self.x.len() + ix]
    }

    fn inside(&self, v: f64) -> bool {
        v >= self.level
    }

    fn point(&self, edge: Edge) -> (f64, f64) {
        let (ix, iy, jx, jy) = match edge {
            Edge::Horizontal(ix, iy) => (ix, iy, ix + 1, iy),
            Edge::Vertical(ix, iy) => (ix, iy, ix, iy + 1),
        };
        let (a, b) = (self.at(ix, iy), self.at(jx, jy));
        let t = (self.level - a) / (b - a);
        (
            self.x[ix] + t * (self.x[jx] - self.x[ix]),
            self.y[iy] + t * (self.y[jy] - self.y[iy]),
        )
    }

    fn cell_segments(&self, ix: usize, iy: usize, out: &mut Vec<[Edge; 2]>) {
        let corners = [
            self.at(ix, iy),
            self.at(ix + 1, iy),
            self.at(ix + 1, iy + 1),
            self.at(ix, iy + 1),
        ];
        if corners.iter().any(|v| !v.is_finite()) {
            return;
        }
        let ins = corners.map(|v| self.inside(v));
        let bottom = Edge::Horizontal(ix, iy);
        let right = Edge::Vertical(ix + 1, iy);
        let top = Edge::Horizontal(ix, iy + 1);
        let left = Edge::Vertical(ix, iy);
        // Edge k joins corner k and corner k+1.
        let edges = [bottom, right, top, left];
        let crossed: Vec<Edge> = (0..4)
            .filter(|&k| ins[k] != ins[(k + 1) % 4])
            .map(|k| edges[k])
            .collect();
        match crossed.len() {
            2 => out.push([crossed[0], crossed[1]]),
            4 => {
                let center = 0.25 * corners.iter().sum::<f64>();
                if self.inside(center) == ins[0] {
                    out.push([bottom, right]);
                    out.push([top, left]);
                } else {
                    out.push([left, bottom]);
                    out.push([right, top]);
                }
            }
            _ => {}
        }
    }
}

/// Level set `values == level` of a grid stored row-major with `y` rows and
/// `x` columns, joined into polylines.
///
/// Output order depends only on the grid, never on hashing.
pub fn march(x: &[f64], y: &[f64], values: &[f64], level: f64) -> Vec<Polyline> {
    assert_eq!(values.len(), x.len() * y.len(), "grid shape mismatch");
    if x.len() < 2 || y.len() < 2 {
        return Vec::new();
    }
    let grid = Grid { x, y, values, level };

    let mut segments = Vec::new();
    for iy in 0..y.len() - 1 {
        for ix in 0..x.len() - 1 {
            grid.cell_segments(ix, iy, &mut segments);
        }
    }

    let mut incident: HashMap<Edge, Vec<usize>> = HashMap::new();
    for (s, seg) in segments.iter().enumerate() {
        for &e in seg {
            incident.entry(e).or_default().push(s);
        }
    }

    let mut used = vec![false; segments.len()];
    let mut lines = Vec::new();

    let walk = |start: usize, from: Edge, used: &mut Vec<bool>| -> Vec<(f64, f64)> {
        used[start] = true;
        let mut pts = vec![grid.point(from)];
        let mut at = other_end(&segments[start], from);
        pts.push(grid.point(at));
        while let Some(&next) = incident[&at].iter().find(|&&s| !used[s]) {
            used[next] = true;
            at = other_end(&segments[next], at);
            pts.push(grid.point(at));
        }
        pts
    };

    // Open lines start at an edge touched by a single segment.
    for s in 0..segments.len() {
        if used[s] {
            continue;
        }
        if let Some(&end) = segments[s].iter().find(|e| incident[*e].len() == 1) {
            let points = walk(s, end, &mut used);
            lines.push(Polyline { points, closed: false });
        }
    }
    for s in 0..segments.len() {
        if !used[s] {
            let points = walk(s, segments[s][0], &mut used);
            lines.push(Polyline { points, closed: true });
        }
    }
    lines
}

fn other_end(seg: &[Edge; 2], e: Edge) -> Edge {
    if seg[0] == e {
        seg[1]
    } else {
        seg[0]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sweep::linspace;

    fn sample(x: &[f64], y: &[f64], f: impl Fn(f64, f64) -> f64) -> Vec<f64> {
        y.iter().flat_map(|&yy| x.iter().map(move |&xx| (xx, yy))).map(|(a, b)| f(a, b)).collect()
    }

    #[test]
    fn circle_is_one_closed_loop() {
        let x = linspace(-2.0, 2.0, 41).unwrap();
        let y = linspace(-2.0, 2.0, 41).unwrap();
        let v = sample(&x, &y, |a, b| a * a + b * b);
        let lines = march(&x, &y, &v, 1.0);
        assert_eq!(lines.len(), 1);
        let l = &lines[0];
        assert!(l.closed);
        assert_eq!(l.points.first(), l.points.last());
        for &(a, b) in &l.points {
            assert!(((a * a + b * b).sqrt() - 1.0).abs() < 5e-3);
        }
    }

    #[test]
    fn straight_line_is_exact_and_open() {
        let x = linspace(0.0, 1.0, 11).unwrap();
        let y = linspace(0.0, 2.0, 7).unwrap();
        let v = sample(&x, &y, |a, _| a - 0.33);
        let lines = march(&x, &y, &v, 0.0);
        assert_eq!(lines.len(), 1);
        assert!(!lines[0].closed);
        assert_eq!(lines[0].points.len(), 7);
        for &(a, _) in &lines[0].points {
            assert!((a - 0.33).abs() < 1e-14);
        }
    }

    #[test]
    fn saddle_cell_gives_two_segments() {
        let x = [0.0, 1.0];
        let y = [0.0, 1.0];
        let v = [1.0, -1.0, 1.0, -1.0];
        // Rows: y=0 → (1, -1); y=1 → (1, -1). Not a saddle; a vertical split.
        assert_eq!(march(&x, &y, &v, 0.0).len(), 1);
        let v = [1.0, -1.0, -1.0, 1.0];
        let lines = march(&x, &y, &v, 0.0);
        assert_eq!(lines.len(), 2);
    }

    #[test]
    fn no_crossing_no_lines() {
        let x = [0.0, 1.0, 2.0];
        let y = [0.0, 1.0];
        assert!(march(&x, &y, &[1.0; 6], 0.0).is_empty());
    }
}
