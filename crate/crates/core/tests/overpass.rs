//! Overpass client against a local mock server.

use std::io::{BufRead, BufReader, Write};
use std::net::TcpListener;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;
use std::time::Duration;

use hexstation::osm::{fetch_overpass, Geometry, OverpassConfig};
use hexstation::Error;
use serde_json::json;

struct Mock {
    url: String,
    hits: Arc<AtomicUsize>,
}

/// Serves `respond(query) -> (status, body)` for every request, one request
/// per connection.
fn serve(respond: fn(&str) -> (u16, String)) -> Mock {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let url = format!("http://{}/api/interpreter", listener.local_addr().unwrap());
    let hits = Arc::new(AtomicUsize::new(0));
    let counter = hits.clone();
    std::thread::spawn(move || {
        for stream in listener.incoming() {
            let Ok(mut stream) = stream else { continue };
            let mut reader = BufReader::new(stream.try_clone().unwrap());
            let mut request_line = String::new();
            reader.read_line(&mut request_line).unwrap();
            loop {
                let mut header = String::new();
                if reader.read_line(&mut header).unwrap() == 0 || header == "\r\n" {
                    break;
                }
            }
            counter.fetch_add(1, Ordering::SeqCst);
            let target = request_line.split_whitespace().nth(1).unwrap_or_default();
            let query = reqwest::Url::parse(&format!("http://x{target}"))
                .unwrap()
                .query_pairs()
                .find(|(k, _)| k == "data")
                .map(|(_, v)| v.into_owned())
                .unwrap_or_default();
            let (status, body) = respond(&query);
            let _ = write!(
                stream,
                "HTTP/1.1 {status} X\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{body}",
                body.len()
            );
        }
    });
    Mock { url, hits }
}

fn config(url: &str, cache: &std::path::Path) -> OverpassConfig {
    OverpassConfig {
        endpoint: url.to_owned(),
        timeout: Duration::from_secs(10),
        cache_dir: cache.to_path_buf(),
        retries: 1,
        backoff: Duration::from_millis(1),
    }
}

fn city_server(query: &str) -> (u16, String) {
    if query.contains("out ids") {
        let elements = if query.contains("\"Testville\"") { json!([{"type": "area", "id": 3600000042u64}]) } else { json!([]) };
        return (200, json!({"elements": elements}).to_string());
    }
    assert!(query.contains("area(id:3600000042)"), "unexpected data query {query}");
    let body = json!({"elements": [
        {"type": "node", "id": 1, "lat": 51.1, "lon": 17.03, "tags": {"amenity": "cafe"}},
        {"type": "way", "id": 2, "tags": {"highway": "residential"},
         "geometry": [{"lat": 51.1, "lon": 17.03}, {"lat": 51.101, "lon": 17.031}]}
    ]});
    (200, body.to_string())
}

#[test]
fn fetches_then_replays_from_cache() {
    let mock = serve(city_server);
    let cache = tempfile::tempdir().unwrap();
    let cfg = config(&mock.url, cache.path());
    let objects = fetch_overpass("Testville", &cfg).unwrap();
    assert_eq!(objects.len(), 2);
    assert!(matches!(objects.iter().find(|o| o.tag("amenity").is_some()).unwrap().geometry, Geometry::Point(_)));
    assert!(objects.iter().any(|o| matches!(o.geometry, Geometry::LineString(_))));
    assert_eq!(mock.hits.load(Ordering::SeqCst), 2);
    assert!(cfg.cache_path("Testville").exists());

    let again = fetch_overpass("Testville", &cfg).unwrap();
    assert_eq!(again, objects);
    assert_eq!(mock.hits.load(Ordering::SeqCst), 2, "cache replay must not hit the network");
}

#[test]
fn unknown_area_is_a_lookup_error() {
    let mock = serve(city_server);
    let cache = tempfile::tempdir().unwrap();
    let err = fetch_overpass("Nowhere", &config(&mock.url, cache.path())).unwrap_err();
    assert!(matches!(err, Error::Lookup(_)), "{err}");
    assert!(!config(&mock.url, cache.path()).cache_path("Nowhere").exists());
}

#[test]
fn server_errors_retry_then_fail() {
    let mock = serve(|_| (503, "{}".into()));
    let cache = tempfile::tempdir().unwrap();
    let err = fetch_overpass("Testville", &config(&mock.url, cache.path())).unwrap_err();
    assert!(matches!(err, Error::Http(_)), "{err}");
    assert_eq!(mock.hits.load(Ordering::SeqCst), 2, "one try plus one retry");
}
