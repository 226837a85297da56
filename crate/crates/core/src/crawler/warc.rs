//! Line-headed page archive:
//!
//! ```text
//! #URL <url>
//! #TIME <rfc3339>
//! #STATUS <int>
//! #LEN <bytes>
//! <body bytes>
//! ```
//!
//! followed by a single `\n` after the body. The format carries no content
//! type; ingested records are labelled `text/html`.

use super::PageRecord;
use chrono::{DateTime, Utc};
use std::fs::File;
use std::io::{self, BufRead, BufReader, Read, Write};
use std::path::Path;

const INGESTED_CONTENT_TYPE: &str = "text/html";

#[derive(Debug, thiserror::Error)]
pub enum WarcError {
    #[error("truncated record starting at byte {record_start} (input ends at byte {offset})")]
    Truncated { record_start: u64, offset: u64 },
    #[error("malformed record at byte {offset}: {message}")]
    Malformed { offset: u64, message: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

pub struct WarcReader<R> {
    inner: R,
    offset: u64,
    done: bool,
}

impl<R: BufRead> WarcReader<R> {
    pub fn new(inner: R) -> Self {
        Self {
            inner,
            offset: 0,
            done: false,
        }
    }

    /// Reads one `\n`-terminated line. Returns `None` at clean EOF.
    fn read_line(&mut self, record_start: u64) -> Result<Option<Vec<u8>>, WarcError> {
        let mut line = Vec::new();
        let n = self.inner.read_until(b'\n', &mut line)?;
        self.offset += n as u64;
        if n == 0 {
            return Ok(None);
        }
        if line.last() != Some(&b'\n') {
            return Err(WarcError::Truncated {
                record_start,
                offset: self.offset,
            });
        }
        line.pop();
        Ok(Some(line))
    }

    fn header(&mut self, key: &str, record_start: u64) -> Result<String, WarcError> {
        let at = self.offset;
        let line = self.read_line(record_start)?.ok_or(WarcError::Truncated {
            record_start,
            offset: self.offset,
        })?;
        let line = String::from_utf8(line).map_err(|_| WarcError::Malformed {
            offset: at,
            message: format!("{key} header is not UTF-8"),
        })?;
        let prefix = format!("#{key} ");
        line.strip_prefix(&prefix)
            .map(str::to_string)
            .ok_or_else(|| WarcError::Malformed {
                offset: at,
                message: format!("expected `#{key}` header"),
            })
    }

    fn read_record(&mut self) -> Result<Option<PageRecord>, WarcError> {
        // Skip blank separator lines between records.
        let record_start = loop {
            let buf = self.inner.fill_buf()?;
            if buf.is_empty() {
                return Ok(None);
            }
            if buf[0] == b'\n' {
                self.inner.consume(1);
                self.offset += 1;
                continue;
            }
            break self.offset;
        };
        let url = self.header("URL", record_start)?;
        let time_at = self.offset;
        let time = self.header("TIME", record_start)?;
        let fetch_time = DateTime::parse_from_rfc3339(&time)
            .map_err(|e| WarcError::Malformed {
                offset: time_at,
                message: format!("bad timestamp `{time}`: {e}"),
            })?
            .with_timezone(&Utc);
        let status_at = self.offset;
        let status = self.header("STATUS", record_start)?;
        let http_status = status.trim().parse().map_err(|_| WarcError::Malformed {
            offset: status_at,
            message: format!("bad status `{status}`"),
        })?;
        let len_at = self.offset;
        let len = self.header("LEN", record_start)?;
        let len: u64 = len.trim().parse().map_err(|_| WarcError::Malformed {
            offset: len_at,
            message: format!("bad length `{len}`"),
        })?;

        let mut raw_body = Vec::with_capacity(len.min(1 << 24) as usize);
        let got = (&mut self.inner).take(len).read_to_end(&mut raw_body)? as u64;
        self.offset += got;
        if got < len {
            return Err(WarcError::Truncated {
                record_start,
                offset: self.offset,
            });
        }
        let mut nl = [0u8; 1];
        let n = self.inner.read(&mut nl)?;
        self.offset += n as u64;
        if n == 0 {
            return Err(WarcError::Truncated {
                record_start,
                offset: self.offset,
            });
        }
        if nl[0] != b'\n' {
            return Err(WarcError::Malformed {
                offset: self.offset - 1,
                message: "body is not followed by a newline".into(),
            });
        }
        Ok(Some(PageRecord {
            url,
            fetch_time,
            http_status,
            content_type: INGESTED_CONTENT_TYPE.to_string(),
            raw_body,
        }))
    }
}

impl<R: BufRead> Iterator for WarcReader<R> {
    type Item = Result<PageRecord, WarcError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        match self.read_record() {
            Ok(Some(r)) => Some(Ok(r)),
            Ok(None) => {
                self.done = true;
                None
            }
            Err(e) => {
                self.done = true;
                Some(Err(e))
            }
        }
    }
}

/// Open an archive file as a record stream.
pub fn ingest_warc(path: impl AsRef<Path>) -> Result<WarcReader<BufReader<File>>, WarcError> {
    Ok(WarcReader::new(BufReader::new(File::open(path)?)))
}

pub fn write_record<W: Write>(mut out: W, record: &PageRecord) -> io::Result<()> {
    write!(
        out,
        "#URL {}\n#TIME {}\n#STATUS {}\n#LEN {}\n",
        record.url,
        record.fetch_time.to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        record.http_status,
        record.raw_body.len()
    )?;
    out.write_all(&record.raw_body)?;
    out.write_all(b"\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use chrono::TimeZone;
    use proptest::prelude::*;

    fn record(url: &str, status: u16, body: &[u8]) -> PageRecord {
        PageRecord {
            url: url.into(),
            fetch_time: Utc.with_ymd_and_hms(2024, 5, 1, 12, 0, 0).unwrap(),
            http_status: status,
            content_type: "text/html".into(),
            raw_body: body.to_vec(),
        }
    }

    #[test]
    fn empty_input_is_empty_stream() {
        assert_eq!(WarcReader::new(&b""[..]).count(), 0);
    }

    #[test]
    fn keeps_non_200_records() {
        let mut buf = Vec::new();
        write_record(&mut buf, &record("https://x.si/missing", 404, b"<p>nope</p>")).unwrap();
        let recs: Vec<_> = WarcReader::new(buf.as_slice()).collect::<Result<_, _>>().unwrap();
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].http_status, 404);
    }

    #[test]
    fn truncated_body_reports_offset() {
        let mut buf = Vec::new();
        write_record(&mut buf, &record("https://x.si/a", 200, b"first")).unwrap();
        let second_start = buf.len() as u64;
        write_record(&mut buf, &record("https://x.si/b", 200, b"0123456789")).unwrap();
        buf.truncate(buf.len() - 5);
        let results: Vec<_> = WarcReader::new(buf.as_slice()).collect();
        assert_eq!(results.len(), 2);
        assert!(results[0].is_ok());
        match &results[1] {
            Err(WarcError::Truncated { record_start, offset }) => {
                assert_eq!(*record_start, second_start);
                assert_eq!(*offset, buf.len() as u64);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn malformed_header() {
        let err = WarcReader::new(&b"#URL a\n#TIME x\n"[..]).next().unwrap().unwrap_err();
        assert!(matches!(err, WarcError::Malformed { offset: 7, .. }));
    }

    proptest! {
        #[test]
        fn round_trip(bodies in proptest::collection::vec(proptest::collection::vec(any::<u8>(), 0..200), 0..5)) {
            let recs: Vec<PageRecord> = bodies
                .iter()
                .enumerate()
                .map(|(i, b)| record(&format!("https://x.si/{i}"), 200, b))
                .collect();
            let mut buf = Vec::new();
            for r in &recs {
                write_record(&mut buf, r).unwrap();
            }
            let back: Vec<_> = WarcReader::new(buf.as_slice()).collect::<Result<_, _>>().unwrap();
            prop_assert_eq!(back, recs);
        }
    }
}
