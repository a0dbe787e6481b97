//! Planar clipping against convex cells.

use super::projection::Xy;

/// Signed shoelace area; positive for counterclockwise rings. The ring may
/// be open or closed.
pub fn signed_area(ring: &[Xy]) -> f64 {
    if ring.len() < 3 {
        return 0.0;
    }
    let mut acc = 0.0;
    for i in 0..ring.len() {
        let [x0, y0] = ring[i];
        let [x1, y1] = ring[(i + 1) % ring.len()];
        acc += x0 * y1 - x1 * y0;
    }
    acc / 2.0
}

fn cross(o: Xy, a: Xy, b: Xy) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Reorders an open convex ring counterclockwise.
pub fn ensure_ccw(mut ring: Vec<Xy>) -> Vec<Xy> {
    if ring.len() > 1 && ring.first() == ring.last() {
        ring.pop();
    }
    if signed_area(&ring) < 0.0 {
        ring.reverse();
    }
    ring
}

/// Sutherland–Hodgman clip of an arbitrary simple ring by a convex
/// counterclockwise ring. For concave subjects the output may contain
/// zero-width bridges, which do not change its area.
pub fn clip_ring(subject: &[Xy], clip: &[Xy]) -> Vec<Xy> {
    let mut output: Vec<Xy> = subject.to_vec();
    if output.len() > 1 && output.first() == output.last() {
        output.pop();
    }
    for i in 0..clip.len() {
        if output.is_empty() {
            break;
        }
        let a = clip[i];
        let b = clip[(i + 1) % clip.len()];
        let input = std::mem::take(&mut output);
        let inside = |p: Xy| cross(a, b, p) >= 0.0;
        let intersect = |p: Xy, q: Xy| {
            let cp = cross(a, b, p);
            let cq = cross(a, b, q);
            let t = cp / (cp - cq);
            [p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])]
        };
        let mut prev = *input.last().expect("non-empty");
        for &cur in &input {
            match (inside(prev), inside(cur)) {
                (true, true) => output.push(cur),
                (true, false) => output.push(intersect(prev, cur)),
                (false, true) => {
                    output.push(intersect(prev, cur));
                    output.push(cur);
                }
                (false, false) => {}
            }
            prev = cur;
        }
    }
    output
}

/// Area of `subject` (exterior minus holes) inside the convex `clip` ring.
pub fn clipped_area(exterior: &[Xy], holes: &[Vec<Xy>], clip: &[Xy]) -> f64 {
    let outer = signed_area(&clip_ring(exterior, clip)).abs();
    let inner: f64 = holes.iter().map(|h| signed_area(&clip_ring(h, clip)).abs()).sum();
    (outer - inner).max(0.0)
}

/// Parameter interval of segment `p→q` inside the convex CCW ring
/// (Cyrus–Beck).
pub fn clip_segment(p: Xy, q: Xy, clip: &[Xy]) -> Option<(f64, f64)> {
    let d = [q[0] - p[0], q[1] - p[1]];
    let (mut t0, mut t1) = (0.0f64, 1.0f64);
    for i in 0..clip.len() {
        let a = clip[i];
        let b = clip[(i + 1) % clip.len()];
        // Inward normal of a CCW edge.
        let n = [-(b[1] - a[1]), b[0] - a[0]];
        let num = n[0] * (p[0] - a[0]) + n[1] * (p[1] - a[1]);
        let den = n[0] * d[0] + n[1] * d[1];
        if den.abs() < 1e-18 {
            if num < 0.0 {
                return None;
            }
            continue;
        }
        let t = -num / den;
        if den > 0.0 {
            t0 = t0.max(t);
        } else {
            t1 = t1.min(t);
        }
        if t0 > t1 {
            return None;
        }
    }
    Some((t0, t1))
}

/// Length of a polyline inside the convex CCW ring.
pub fn clipped_length(line: &[Xy], clip: &[Xy]) -> f64 {
    line.windows(2)
        .filter_map(|w| {
            let len = (w[1][0] - w[0][0]).hypot(w[1][1] - w[0][1]);
            clip_segment(w[0], w[1], clip).map(|(t0, t1)| (t1 - t0) * len)
        })
        .sum()
}

pub fn line_length(line: &[Xy]) -> f64 {
    line.windows(2).map(|w| (w[1][0] - w[0][0]).hypot(w[1][1] - w[0][1])).sum()
}

/// Axis-aligned bounds `[min_x, min_y, max_x, max_y]`.
pub fn bbox(points: &[Xy]) -> [f64; 4] {
    points.iter().fold(
        [f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY],
        |b, p| [b[0].min(p[0]), b[1].min(p[1]), b[2].max(p[0]), b[3].max(p[1])],
    )
}
