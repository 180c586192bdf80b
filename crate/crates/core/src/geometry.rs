//! Arclength-parametrized carrier lines: straight segments and circular arcs.
//!
//! Angles are radians, counterclockwise positive. An arc's sweep sign is its
//! orientation, so a full circle is expressible as sweep = ±2π.

use std::f64::consts::TAU;

use crate::error::DomainError;

/// Slack for comparisons against 2π and arclength bounds; stored values are
/// 32-bit so a stored full circle can overshoot 2π by ~2e-7.
pub const ANGLE_SLACK: f64 = 1e-6;
const LENGTH_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn distance(self, other: Point) -> f64 {
        (other.x - self.x).hypot(other.y - self.y)
    }

    pub fn offset(self, dir: Vector, d: f64) -> Point {
        Point::new(self.x + dir.x * d, self.y + dir.y * d)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vector {
    pub x: f64,
    pub y: f64,
}

impl Vector {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn length(self) -> f64 {
        self.x.hypot(self.y)
    }

    /// Rotated +90°.
    pub fn perp(self) -> Vector {
        Vector::new(-self.y, self.x)
    }

    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }
}

/// Local frame on a carrier: origin on the curve, unit tangent in the
/// direction of increasing arclength, normal = tangent rotated +90°.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    pub origin: Point,
    pub tangent: Vector,
    pub normal: Vector,
}

impl Frame {
    /// Maps local coordinates (`u` along the tangent, `v` along the normal).
    pub fn to_world(&self, u: f64, v: f64) -> Point {
        Point::new(
            self.origin.x + self.tangent.x * u + self.normal.x * v,
            self.origin.y + self.tangent.y * u + self.normal.y * v,
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CarrierLine {
    Segment {
        start: Point,
        end: Point,
    },
    Arc {
        center: Point,
        radius: f64,
        start_angle: f64,
        sweep: f64,
    },
}

impl CarrierLine {
    pub fn check(&self) -> Result<(), DomainError> {
        match *self {
            CarrierLine::Segment { start, end } => {
                if !(start.is_finite() && end.is_finite()) {
                    return Err(DomainError::DegenerateCarrier("non-finite endpoint".into()));
                }
                if start == end || start.distance(end) == 0.0 {
                    return Err(DomainError::DegenerateCarrier("segment endpoints coincide".into()));
                }
            }
            CarrierLine::Arc {
                center,
                radius,
                start_angle,
                sweep,
            } => {
                if !(center.is_finite() && radius.is_finite() && start_angle.is_finite() && sweep.is_finite()) {
                    return Err(DomainError::DegenerateCarrier("non-finite arc parameter".into()));
                }
                if radius <= 0.0 {
                    return Err(DomainError::DegenerateCarrier(format!(
                        "arc radius {radius} is not positive"
                    )));
                }
                if sweep == 0.0 || sweep.abs() > TAU + ANGLE_SLACK {
                    return Err(DomainError::DegenerateCarrier(format!(
                        "arc sweep {sweep} is not in 0 < |sweep| <= 2π"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn length(&self) -> Result<f64, DomainError> {
        self.check()?;
        Ok(self.length_unchecked())
    }

    fn length_unchecked(&self) -> f64 {
        match *self {
            CarrierLine::Segment { start, end } => start.distance(end),
            CarrierLine::Arc { radius, sweep, .. } => radius * sweep.abs(),
        }
    }

    pub fn start_point(&self) -> Point {
        match *self {
            CarrierLine::Segment { start, .. } => start,
            CarrierLine::Arc {
                center,
                radius,
                start_angle,
                ..
            } => polar(center, radius, start_angle),
        }
    }

    pub fn end_point(&self) -> Point {
        match *self {
            CarrierLine::Segment { end, .. } => end,
            CarrierLine::Arc {
                center,
                radius,
                start_angle,
                sweep,
            } => polar(center, radius, start_angle + sweep),
        }
    }

    /// Frame at arclength `s` from the start.
    pub fn frame_at(&self, s: f64) -> Result<Frame, DomainError> {
        self.check()?;
        let length = self.length_unchecked();
        if !(s >= -LENGTH_SLACK && s <= length + LENGTH_SLACK) {
            return Err(DomainError::Arclength { s, length });
        }
        let s = s.clamp(0.0, length);
        Ok(match *self {
            CarrierLine::Segment { start, end } => {
                let tangent = Vector::new((end.x - start.x) / length, (end.y - start.y) / length);
                let origin = if s == 0.0 {
                    start
                } else if s == length {
                    end
                } else {
                    start.offset(tangent, s)
                };
                Frame {
                    origin,
                    tangent,
                    normal: tangent.perp(),
                }
            }
            CarrierLine::Arc {
                center,
                radius,
                start_angle,
                sweep,
            } => {
                let sign = sweep.signum();
                let angle = if s == length {
                    start_angle + sweep
                } else {
                    start_angle + sign * s / radius
                };
                let (sin, cos) = angle.sin_cos();
                let tangent = Vector::new(-sin * sign, cos * sign);
                Frame {
                    origin: Point::new(center.x + radius * cos, center.y + radius * sin),
                    tangent,
                    normal: tangent.perp(),
                }
            }
        })
    }

    /// Parallel curve at signed distance `d` along the normal.
    pub fn offset(&self, d: f64) -> Result<CarrierLine, DomainError> {
        self.check()?;
        Ok(match *self {
            CarrierLine::Segment { start, end } => {
                let length = self.length_unchecked();
                let normal = Vector::new((end.x - start.x) / length, (end.y - start.y) / length).perp();
                CarrierLine::Segment {
                    start: start.offset(normal, d),
                    end: end.offset(normal, d),
                }
            }
            CarrierLine::Arc {
                center,
                radius,
                start_angle,
                sweep,
            } => {
                // the normal of a counterclockwise arc points at the center
                let new_radius = radius - sweep.signum() * d;
                if new_radius <= 0.0 {
                    return Err(DomainError::OffsetCollapse { radius, offset: d });
                }
                CarrierLine::Arc {
                    center,
                    radius: new_radius,
                    start_angle,
                    sweep,
                }
            }
        })
    }

    /// The piece of the carrier between arclengths `s0 < s1`.
    pub fn sub(&self, s0: f64, s1: f64) -> Result<CarrierLine, DomainError> {
        let a = self.frame_at(s0)?;
        let b = self.frame_at(s1)?;
        Ok(match *self {
            CarrierLine::Segment { .. } => CarrierLine::Segment {
                start: a.origin,
                end: b.origin,
            },
            CarrierLine::Arc {
                center,
                radius,
                start_angle,
                sweep,
            } => {
                let sign = sweep.signum();
                CarrierLine::Arc {
                    center,
                    radius,
                    start_angle: start_angle + sign * s0 / radius,
                    sweep: sign * (s1 - s0) / radius,
                }
            }
        })
    }
}

fn polar(center: Point, radius: f64, angle: f64) -> Point {
    let (sin, cos) = angle.sin_cos();
    Point::new(center.x + radius * cos, center.y + radius * sin)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn seg(x1: f64, y1: f64, x2: f64, y2: f64) -> CarrierLine {
        CarrierLine::Segment {
            start: Point::new(x1, y1),
            end: Point::new(x2, y2),
        }
    }

    fn arc(r: f64, a0: f64, sweep: f64) -> CarrierLine {
        CarrierLine::Arc {
            center: Point::new(0.0, 0.0),
            radius: r,
            start_angle: a0,
            sweep,
        }
    }

    /// Composite Simpson integration of |dP/dθ| over the sweep.
    fn simpson_arc_length(c: &CarrierLine, n: usize) -> f64 {
        let CarrierLine::Arc {
            center,
            radius,
            start_angle,
            sweep,
        } = *c
        else {
            unreachable!()
        };
        let p = |t: f64| polar(center, radius, start_angle + sweep * t);
        let h = 1e-6;
        let speed = |t: f64| p(t + h).distance(p(t - h)) / (2.0 * h);
        let dt = 1.0 / n as f64;
        let mut sum = speed(0.0) + speed(1.0);
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            sum += w * speed(i as f64 * dt);
        }
        sum * dt / 3.0
    }

    #[test]
    fn segment_length() {
        assert_eq!(seg(0.0, 0.0, 3.0, 4.0).length().unwrap(), 5.0);
    }

    #[test]
    fn half_circle_length_against_quadrature() {
        let c = arc(10.0, 0.0, PI);
        let numeric = simpson_arc_length(&c, 1000);
        let exact = c.length().unwrap();
        assert!(((exact - numeric) / numeric).abs() < 1e-9, "{exact} vs {numeric}");
        assert!((exact - 31.415_926_535_897_93).abs() < 1e-12);
    }

    #[test]
    fn full_circle_length() {
        assert!((arc(1.0, 0.0, TAU).length().unwrap() - TAU).abs() < 1e-15);
    }

    #[test]
    fn degenerate_inputs() {
        assert!(seg(1.0, 1.0, 1.0, 1.0).length().is_err());
        assert!(arc(0.0, 0.0, 1.0).length().is_err());
        assert!(arc(1.0, 0.0, 0.0).length().is_err());
        assert!(arc(1.0, 0.0, 7.0).length().is_err());
        assert!(seg(f64::NAN, 0.0, 1.0, 0.0).length().is_err());
    }

    #[test]
    fn frame_on_segment() {
        let f = seg(0.0, 0.0, 10.0, 0.0).frame_at(5.0).unwrap();
        assert_eq!(f.origin, Point::new(5.0, 0.0));
        assert_eq!(f.tangent, Vector::new(1.0, 0.0));
        assert_eq!(f.normal, Vector::new(0.0, 1.0));
    }

    #[test]
    fn frame_on_quarter_arc_midpoint() {
        let c = arc(10.0, 0.0, FRAC_PI_2);
        let l = c.length().unwrap();
        let f = c.frame_at(l / 2.0).unwrap();
        let h = 10.0 * std::f64::consts::FRAC_1_SQRT_2;
        assert!((f.origin.x - h).abs() < 1e-12 && (f.origin.y - h).abs() < 1e-12);
        // tangent against a central finite difference of positions
        let eps = 1e-5;
        let a = c.frame_at(l / 2.0 - eps).unwrap().origin;
        let b = c.frame_at(l / 2.0 + eps).unwrap().origin;
        let fd = Vector::new((b.x - a.x) / (2.0 * eps), (b.y - a.y) / (2.0 * eps));
        assert!((fd.x - f.tangent.x).abs() < 1e-6 && (fd.y - f.tangent.y).abs() < 1e-6);
        // perpendicular to the radius
        assert!((f.tangent.x * f.origin.x + f.tangent.y * f.origin.y).abs() < 1e-9);
    }

    #[test]
    fn frame_at_zero_is_start_point() {
        let c = arc(3.0, 1.0, -2.0);
        assert_eq!(c.frame_at(0.0).unwrap().origin, c.start_point());
        let s = seg(1.5, -2.0, 4.0, 8.0);
        assert_eq!(s.frame_at(0.0).unwrap().origin, Point::new(1.5, -2.0));
        assert_eq!(s.frame_at(s.length().unwrap()).unwrap().origin, Point::new(4.0, 8.0));
    }

    #[test]
    fn clockwise_arc_tangent_follows_sweep() {
        let c = arc(2.0, 0.0, -PI);
        let f = c.frame_at(0.0).unwrap();
        assert!((f.tangent.y + 1.0).abs() < 1e-12);
        // normal of a clockwise arc points away from the center
        assert!(f.normal.x > 0.99);
    }

    #[test]
    fn arclength_out_of_range() {
        let c = seg(0.0, 0.0, 1.0, 0.0);
        assert!(matches!(c.frame_at(1.5), Err(DomainError::Arclength { .. })));
        assert!(c.frame_at(-0.1).is_err());
    }

    #[test]
    fn offsets() {
        assert_eq!(seg(0.0, 0.0, 10.0, 0.0).offset(2.0).unwrap(), seg(0.0, 2.0, 10.0, 2.0));
        let inward = arc(10.0, 0.3, 1.0).offset(3.0).unwrap();
        assert_eq!(inward, arc(7.0, 0.3, 1.0));
        let outward = arc(10.0, 0.3, -1.0).offset(3.0).unwrap();
        assert_eq!(outward, arc(13.0, 0.3, -1.0));
        assert!(matches!(
            arc(2.0, 0.0, 1.0).offset(2.0),
            Err(DomainError::OffsetCollapse { .. })
        ));
    }

    #[test]
    fn offset_lengths() {
        let s = seg(1.0, 2.0, 7.0, -3.0);
        assert!((s.offset(-4.0).unwrap().length().unwrap() - s.length().unwrap()).abs() < 1e-12);
        let a = arc(5.0, 0.0, 2.0);
        assert!((a.offset(1.5).unwrap().length().unwrap() - 3.5 * 2.0).abs() < 1e-12);
    }

    #[test]
    fn sub_pieces() {
        let a = arc(5.0, 0.0, PI);
        let p = a.sub(1.0, 3.0).unwrap();
        assert!((p.length().unwrap() - 2.0).abs() < 1e-12);
        let s0 = a.frame_at(1.0).unwrap().origin;
        let q = p.start_point();
        assert!(s0.distance(q) < 1e-12);
    }
}
