use serde::{Deserialize, Serialize};

use super::{parse_geojson, Geometry};
use crate::error::{Error, Result};
use crate::hexgrid::LatLng;

/// A bike-share station position.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StationRecord {
    pub city: String,
    pub position: LatLng,
    pub external_id: Option<String>,
}

/// Reads stations from CSV (`lat,lon[,id]` header required) or from a
/// GeoJSON FeatureCollection of points.
pub fn load_stations(bytes: &[u8], city: &str) -> Result<Vec<StationRecord>> {
    let first = bytes.iter().find(|b| !b.is_ascii_whitespace());
    if first == Some(&b'{') {
        return load_geojson(bytes, city);
    }
    if first.is_none() {
        return Ok(Vec::new());
    }

    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(bytes);
    let headers = reader.headers()?.clone();
    let column = |name: &str| headers.iter().position(|h| h.eq_ignore_ascii_case(name));
    let (Some(lat_col), Some(lon_col)) = (column("lat"), column("lon")) else {
        return Err(Error::Row {
            line: 1,
            message: format!("station header must contain lat and lon, got {:?}", headers.iter().collect::<Vec<_>>()),
        });
    };
    let id_col = column("id");

    let mut out = Vec::new();
    for row in reader.records() {
        let row = row?;
        let line = row.position().map_or(0, |p| p.line() as usize);
        let number = |col: usize, what: &str| -> Result<f64> {
            row.get(col)
                .and_then(|s| s.parse::<f64>().ok())
                .ok_or_else(|| Error::Row {
                    line,
                    message: format!("{what} is missing or not a number"),
                })
        };
        let lat = number(lat_col, "lat")?;
        let lon = number(lon_col, "lon")?;
        let position = LatLng::new(lat, lon).map_err(|e| Error::Row {
            line,
            message: e.to_string(),
        })?;
        let external_id = id_col
            .and_then(|c| row.get(c))
            .filter(|s| !s.is_empty())
            .map(str::to_owned);
        out.push(StationRecord {
            city: city.to_owned(),
            position,
            external_id,
        });
    }
    Ok(out)
}

fn load_geojson(bytes: &[u8], city: &str) -> Result<Vec<StationRecord>> {
    parse_geojson(bytes)?
        .into_iter()
        .enumerate()
        .map(|(i, o)| match o.geometry {
            Geometry::Point(position) => Ok(StationRecord {
                city: city.to_owned(),
                position,
                external_id: Some(o.id),
            }),
            _ => Err(Error::Row {
                line: i + 1,
                message: "station features must be points".into(),
            }),
        })
        .collect()
}

/// Writes stations as `lat,lon,id` CSV.
pub fn write_stations_csv<W: std::io::Write>(stations: &[StationRecord], w: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(w);
    writer.write_record(["lat", "lon", "id"])?;
    for s in stations {
        writer.write_record([
            s.position.lat().to_string(),
            s.position.lon().to_string(),
            s.external_id.clone().unwrap_or_default(),
        ])?;
    }
    writer.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_body() {
        assert!(load_stations(b"lat,lon\n", "x").unwrap().is_empty());
        assert!(load_stations(b"", "x").unwrap().is_empty());
    }

    #[test]
    fn three_rows() {
        let src = b"lat,lon,id\n51.1,17.0,a\n51.2,17.1,b\n51.3,17.2,\n";
        let got = load_stations(src, "wroclaw").unwrap();
        assert_eq!(got.len(), 3);
        assert_eq!(got[0].external_id.as_deref(), Some("a"));
        assert_eq!(got[2].external_id, None);
        assert_eq!(got[1].city, "wroclaw");
    }

    #[test]
    fn out_of_range_row_names_the_line() {
        let src = b"lat,lon\n51.1,17.0\n95,17.0\n";
        match load_stations(src, "x") {
            Err(Error::Row { line, message }) => {
                assert_eq!(line, 3);
                assert!(message.contains("latitude"));
            }
            other => panic!("expected row error, got {other:?}"),
        }
    }

    #[test]
    fn header_order_is_free() {
        let got = load_stations(b"id,lon,lat\ns1,17.0,51.0\n", "x").unwrap();
        assert_eq!(got[0].position, LatLng::new(51.0, 17.0).unwrap());
    }

    #[test]
    fn geojson_points() {
        let src = br#"{"type":"FeatureCollection","features":[
            {"type":"Feature","id":"s1","geometry":{"type":"Point","coordinates":[17,51]},"properties":{}}]}"#;
        let got = load_stations(src, "x").unwrap();
        assert_eq!(got.len(), 1);
        assert_eq!(got[0].external_id.as_deref(), Some("s1"));
    }

    #[test]
    fn csv_round_trip() {
        let src = b"lat,lon,id\n51.1,17.0,a\n";
        let stations = load_stations(src, "x").unwrap();
        let mut buf = Vec::new();
        write_stations_csv(&stations, &mut buf).unwrap();
        assert_eq!(load_stations(&buf, "x").unwrap(), stations);
    }
}
