use crate::hexgrid::{LatLng, EARTH_RADIUS_M};

/// Planar point in meters.
pub type Xy = [f64; 2];

/// Azimuthal equidistant projection around a fixed center. Distances from
/// the center are exact; at city scale area distortion is below 1e-6.
#[derive(Debug, Clone, Copy)]
pub struct LocalProjection {
    center: LatLng,
    lon0: f64,
    sin_lat0: f64,
    cos_lat0: f64,
}

impl LocalProjection {
    pub fn new(center: LatLng) -> Self {
        let lat0 = center.lat().to_radians();
        Self {
            center,
            lon0: center.lon().to_radians(),
            sin_lat0: lat0.sin(),
            cos_lat0: lat0.cos(),
        }
    }

    /// Centered on the mean of the given points.
    pub fn around<I: IntoIterator<Item = LatLng>>(points: I) -> Option<Self> {
        let (mut lat, mut x, mut y, mut n) = (0.0, 0.0, 0.0, 0usize);
        for p in points {
            lat += p.lat();
            // Average longitude on the unit circle so the antimeridian is safe.
            x += p.lon().to_radians().cos();
            y += p.lon().to_radians().sin();
            n += 1;
        }
        if n == 0 {
            return None;
        }
        let lon = y.atan2(x).to_degrees();
        LatLng::new(lat / n as f64, lon).ok().map(Self::new)
    }

    pub fn center(&self) -> LatLng {
        self.center
    }

    pub fn project(&self, p: LatLng) -> Xy {
        let lat = p.lat().to_radians();
        let dlon = p.lon().to_radians() - self.lon0;
        let (sin_lat, cos_lat) = lat.sin_cos();
        let cos_c = (self.sin_lat0 * sin_lat + self.cos_lat0 * cos_lat * dlon.cos()).clamp(-1.0, 1.0);
        let c = cos_c.acos();
        let k = if c < 1e-12 { 1.0 } else { c / c.sin() };
        let x = EARTH_RADIUS_M * k * cos_lat * dlon.sin();
        let y = EARTH_RADIUS_M * k * (self.cos_lat0 * sin_lat - self.sin_lat0 * cos_lat * dlon.cos());
        [x, y]
    }

    pub fn unproject(&self, [x, y]: Xy) -> LatLng {
        let rho = x.hypot(y);
        if rho < 1e-9 {
            return self.center;
        }
        let c = rho / EARTH_RADIUS_M;
        let (sin_c, cos_c) = c.sin_cos();
        let lat = (cos_c * self.sin_lat0 + y * sin_c * self.cos_lat0 / rho).clamp(-1.0, 1.0).asin();
        let lon = self.lon0 + (x * sin_c).atan2(rho * self.cos_lat0 * cos_c - y * self.sin_lat0 * sin_c);
        let mut lon = lon.to_degrees();
        if lon > 180.0 {
            lon -= 360.0;
        } else if lon <= -180.0 {
            lon += 360.0;
        }
        LatLng::new(lat.to_degrees(), lon).expect("inverse projection stays on the sphere")
    }
}
