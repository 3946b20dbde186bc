//! Optional curve-metadata lookup from a REST endpoint serving JSON records
//! shaped like the `curve` block of a problem file.

use crate::criteria::CurveMetadata;
use crate::error::{Error, Result};

/// `GET {endpoint}/{label}`, parsed as curve metadata.
#[cfg(feature = "fetch")]
pub fn fetch_metadata(label: &str, endpoint: &str) -> Result<CurveMetadata> {
    let url = format!("{}/{}", endpoint.trim_end_matches('/'), label);
    let body = ureq::get(&url)
        .timeout(std::time::Duration::from_secs(20))
        .call()
        .map_err(|e| Error::Fetch(format!("{url}: {e}")))?
        .into_string()
        .map_err(|e| Error::Fetch(format!("{url}: {e}")))?;
    parse_metadata(&body)
}

#[cfg(not(feature = "fetch"))]
pub fn fetch_metadata(_label: &str, _endpoint: &str) -> Result<CurveMetadata> {
    Err(Error::Fetch("built without the `fetch` feature".into()))
}

pub fn parse_metadata(body: &str) -> Result<CurveMetadata> {
    let de = &mut serde_json::Deserializer::from_str(body);
    serde_path_to_error::deserialize(de).map_err(|e| Error::Fetch(format!("bad metadata at {}: {}", e.path(), e.inner())))
}

#[cfg(all(test, feature = "fetch"))]
mod tests {
    use super::*;
    use std::io::{Read, Write};
    use std::net::TcpListener;

    #[test]
    fn fetches_from_a_local_server() {
        let listener = TcpListener::bind("127.0.0.1:0").unwrap();
        let addr = listener.local_addr().unwrap();
        let server = std::thread::spawn(move || {
            let (mut stream, _) = listener.accept().unwrap();
            let mut buf = [0u8; 1024];
            let n = stream.read(&mut buf).unwrap();
            let request = String::from_utf8_lossy(&buf[..n]).to_string();
            let body = r#"{"label":"79a1","conductor":79,"ainvs":[1,1,1,-2,0],"torsion_order":1,"tamagawa":{"79":1}}"#;
            write!(
                stream,
                "HTTP/1.1 200 OK\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{}",
                body.len(),
                body
            )
            .unwrap();
            request
        });
        let meta = fetch_metadata("79a1", &format!("http://{addr}/curves/")).unwrap();
        assert!(server.join().unwrap().starts_with("GET /curves/79a1 "));
        assert_eq!(meta.conductor, Some(79));
        assert_eq!(meta.tamagawa.get("79"), Some(&1));
    }

    #[test]
    fn unreachable_endpoint_is_an_error() {
        let listener = TcpListener::bind("127.0.0.1:0").unwrap();
        let addr = listener.local_addr().unwrap();
        drop(listener);
        assert!(matches!(fetch_metadata("79a1", &format!("http://{addr}")), Err(Error::Fetch(_))));
    }
}
