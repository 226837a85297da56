use super::DiffError;
use url::Url;

/// Canonical URL form used for overlap. Scheme and host are lowercased, a
/// leading `www.` and default ports are dropped, the fragment is removed and
/// a bare `/` path is dropped. Query strings are kept verbatim.
pub fn normalize_url(raw: &str) -> Result<String, DiffError> {
    let bad = |message: String| DiffError::BadUrl {
        url: raw.to_string(),
        message,
    };
    let url = Url::parse(raw.trim()).map_err(|e| bad(e.to_string()))?;
    let host = url.host_str().ok_or_else(|| bad("no host".into()))?;
    let host = host.strip_prefix("www.").unwrap_or(host);
    let mut out = format!("{}://{}", url.scheme(), host);
    // `Url` already omits the port when it is the scheme default
    if let Some(port) = url.port() {
        out.push_str(&format!(":{port}"));
    }
    let path = url.path();
    let path = if path.len() > 1 {
        path.strip_suffix('/').unwrap_or(path)
    } else {
        ""
    };
    out.push_str(path);
    if let Some(q) = url.query() {
        out.push('?');
        out.push_str(q);
    }
    Ok(out)
}
