use super::config::Standards;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProjectionCategory {
    /// GOST 2.317 axonometric projections.
    Axonometric,
    /// GOST 2.305 orthographic views.
    View,
    /// Additional frontal oblique projections with X to the right and Y in
    /// the first quadrant.
    Oblique,
}

/// One projected coordinate axis: a unit direction on the sheet and the
/// distortion coefficient along it (0 for the depth axis of a view).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub dir: (f64, f64),
    pub coef: f64,
}

impl Axis {
    pub fn from_degrees(angle_deg: f64, coef: f64) -> Self {
        let a = angle_deg.to_radians();
        let (sin, cos) = a.sin_cos();
        // snap exact quadrant angles so axes like (1, 0) compare exactly
        let snap = |v: f64| if v.abs() < 1e-12 { 0.0 } else { v };
        Self {
            dir: (snap(cos), snap(sin)),
            coef,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Projection {
    pub name: String,
    pub category: ProjectionCategory,
    /// X, Y, Z.
    pub axes: [Axis; 3],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectionId(pub u8);

impl Standards {
    pub fn projection(&self, id: ProjectionId) -> Option<&Projection> {
        self.projections.get(usize::from(id.0))
    }
}
