use std::time::Duration;
use url::Url;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FetchResponse {
    pub status: u16,
    pub content_type: String,
    pub body: Vec<u8>,
}

#[derive(Debug, thiserror::Error)]
#[error("fetching {url} failed: {message}")]
pub struct FetchError {
    pub url: String,
    pub message: String,
}

/// Transport used by the crawler. HTTP error statuses are responses, not errors.
pub trait Fetcher {
    fn fetch(&self, url: &Url) -> Result<FetchResponse, FetchError>;
}

/// Blocking HTTP fetcher.
pub struct HttpFetcher {
    agent: ureq::Agent,
    max_body: u64,
}

impl HttpFetcher {
    pub fn new(user_agent: &str, timeout: Duration) -> Self {
        let agent: ureq::Agent = ureq::Agent::config_builder()
            .http_status_as_error(false)
            .timeout_global(Some(timeout))
            .user_agent(user_agent)
            .build()
            .into();
        Self {
            agent,
            max_body: 16 * 1024 * 1024,
        }
    }
}

impl Fetcher for HttpFetcher {
    fn fetch(&self, url: &Url) -> Result<FetchResponse, FetchError> {
        let err = |e: ureq::Error| FetchError {
            url: url.to_string(),
            message: e.to_string(),
        };
        let mut resp = self.agent.get(url.as_str()).call().map_err(err)?;
        let status = resp.status().as_u16();
        let content_type = resp
            .headers()
            .get("content-type")
            .and_then(|v| v.to_str().ok())
            .unwrap_or("")
            .to_string();
        let body = resp
            .body_mut()
            .with_config()
            .limit(self.max_body)
            .read_to_vec()
            .map_err(err)?;
        Ok(FetchResponse {
            status,
            content_type,
            body,
        })
    }
}
