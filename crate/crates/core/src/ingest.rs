//! Search-request shaping for a video-platform API, response parsing, a
//! pluggable transport (live HTTP or directory fixtures), quota
//! bookkeeping and crawl planning.
//!
//! Nothing in this module touches the network: page fetches go through the
//! [`Transport`] trait, and the bundled [`FixtureTransport`] serves
//! responses from a directory tree so the whole pipeline runs offline.

use crate::lexicon::CommentBatch;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::fmt;
use std::path::PathBuf;
use std::sync::atomic::{AtomicU64, Ordering};
use thiserror::Error;

/// Comments page size used for pagination and quota accounting (the
/// platform maximum).
pub const PAGE_SIZE: usize = 50;

/// Default daily request allowance.
pub const DEFAULT_DAILY_LIMIT: u64 = 10_000;

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("search config is missing an api key")]
    MissingApiKey,
    #[error("keyword list is empty")]
    NoKeywords,
    #[error("daily quota of {limit} requests exhausted")]
    QuotaExceeded { limit: u64 },
    #[error("unknown video id '{0}'")]
    UnknownVideo(String),
    #[error("transport failure for {context}: {message}")]
    Transport { context: String, message: String },
    #[error("malformed JSON in {context}: {message}")]
    BadJson { context: String, message: String },
    #[error("invalid base url '{0}'")]
    BadBaseUrl(String),
}

/// An opaque API credential. The secret is excluded from Debug and Display
/// output so it can never reach logs.
#[derive(Clone, Serialize, Deserialize)]
pub struct ApiKey(String);

impl ApiKey {
    pub fn new(secret: impl Into<String>) -> Self {
        Self(secret.into())
    }

    /// Exposes the secret for request construction only.
    pub fn reveal(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for ApiKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("ApiKey(***)")
    }
}

/// One search request, fully shaped but not yet executed.
#[derive(Debug, Clone)]
pub struct SearchRequest {
    pub base_url: String,
    pub api_key: ApiKey,
    pub query: String,
    pub part: String,
    pub content_type: String,
    pub max_results: usize,
}

impl SearchRequest {
    /// The request URL with the query percent-encoded. The key parameter is
    /// appended last.
    pub fn to_url(&self) -> Result<String, IngestError> {
        let mut url = url::Url::parse(&self.base_url)
            .map_err(|_| IngestError::BadBaseUrl(self.base_url.clone()))?;
        url.query_pairs_mut()
            .append_pair("part", &self.part)
            .append_pair("type", &self.content_type)
            .append_pair("maxResults", &self.max_results.to_string())
            .append_pair("q", &self.query)
            .append_pair("key", self.api_key.reveal());
        Ok(String::from(url))
    }
}

/// Crawl configuration independent of the keyword list.
#[derive(Debug, Clone)]
pub struct CrawlConfig {
    pub base_url: String,
    pub api_key: Option<ApiKey>,
    pub results_per_keyword: usize,
    pub comments_per_video: usize,
}

impl Default for CrawlConfig {
    fn default() -> Self {
        Self {
            base_url: "https://www.googleapis.com/youtube/v3/search".into(),
            api_key: None,
            results_per_keyword: 5,
            comments_per_video: 100,
        }
    }
}

/// One shaped request per keyword, in keyword order.
pub fn build_search_requests(
    keywords: &[String],
    config: &CrawlConfig,
) -> Result<Vec<SearchRequest>, IngestError> {
    if keywords.is_empty() {
        return Err(IngestError::NoKeywords);
    }
    let api_key = config.api_key.clone().ok_or(IngestError::MissingApiKey)?;
    Ok(keywords
        .iter()
        .map(|kw| SearchRequest {
            base_url: config.base_url.clone(),
            api_key: api_key.clone(),
            query: kw.clone(),
            part: "snippet".into(),
            content_type: "video".into(),
            max_results: config.results_per_keyword,
        })
        .collect())
}

/// Extracts video ids from a search response: `items[].id.videoId`,
/// skipping non-video items. Total over arbitrary bytes: malformed JSON is
/// an error, a missing items array is an empty list flagged by the caller.
pub fn parse_search_response(bytes: &[u8], context: &str) -> Result<Vec<String>, IngestError> {
    let value: Value = serde_json::from_slice(bytes).map_err(|e| IngestError::BadJson {
        context: context.to_string(),
        message: e.to_string(),
    })?;
    let Some(items) = value.get("items").and_then(Value::as_array) else {
        return Ok(Vec::new());
    };
    Ok(items
        .iter()
        .filter_map(|item| item.get("id")?.get("videoId")?.as_str().map(str::to_string))
        .collect())
}

/// Extracts comment texts from one comment-threads page:
/// `items[].snippet.topLevelComment.snippet.textDisplay`, plus the
/// `nextPageToken` when present.
pub fn parse_comments_page(
    bytes: &[u8],
    context: &str,
) -> Result<(Vec<String>, Option<String>), IngestError> {
    let value: Value = serde_json::from_slice(bytes).map_err(|e| IngestError::BadJson {
        context: context.to_string(),
        message: e.to_string(),
    })?;
    let comments = value
        .get("items")
        .and_then(Value::as_array)
        .map(|items| {
            items
                .iter()
                .filter_map(|item| {
                    item.get("snippet")?
                        .get("topLevelComment")?
                        .get("snippet")?
                        .get("textDisplay")?
                        .as_str()
                        .map(str::to_string)
                })
                .collect()
        })
        .unwrap_or_default();
    let next = value.get("nextPageToken").and_then(Value::as_str).map(str::to_string);
    Ok((comments, next))
}

/// Local request budget with atomic debits; concurrent executors can never
/// push `used` past `daily_limit`.
#[derive(Debug)]
pub struct QuotaLedger {
    daily_limit: u64,
    used: AtomicU64,
}

impl QuotaLedger {
    pub fn new(daily_limit: u64) -> Self {
        Self { daily_limit, used: AtomicU64::new(0) }
    }

    /// Debits `n` requests, or fails without changing the ledger when the
    /// budget cannot cover them.
    pub fn try_debit(&self, n: u64) -> Result<(), IngestError> {
        let mut current = self.used.load(Ordering::SeqCst);
        loop {
            let next = current.saturating_add(n);
            if next > self.daily_limit {
                return Err(IngestError::QuotaExceeded { limit: self.daily_limit });
            }
            match self.used.compare_exchange(current, next, Ordering::SeqCst, Ordering::SeqCst) {
                Ok(_) => return Ok(()),
                Err(actual) => current = actual,
            }
        }
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::SeqCst)
    }

    pub fn headroom(&self) -> u64 {
        self.daily_limit - self.used()
    }
}

impl Default for QuotaLedger {
    fn default() -> Self {
        Self::new(DEFAULT_DAILY_LIMIT)
    }
}

/// Raw response pages, addressed the way the crawl consumes them.
pub trait Transport: Send + Sync {
    /// Search results for one keyword.
    fn search(&self, keyword: &str) -> Result<Vec<u8>, IngestError>;
    /// One page of a video's comments, `page` counting from 1.
    fn comments_page(&self, video_id: &str, page: usize) -> Result<Vec<u8>, IngestError>;
    /// Timestamp recorded on crawl records; fixtures pin this for
    /// reproducible manifests.
    fn timestamp(&self) -> String;
}

/// Serves canned responses from `root/search/<keyword>.json` and
/// `root/comments/<video_id>/page<N>.json`.
pub struct FixtureTransport {
    root: PathBuf,
}

impl FixtureTransport {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        Self { root: root.into() }
    }
}

impl Transport for FixtureTransport {
    fn search(&self, keyword: &str) -> Result<Vec<u8>, IngestError> {
        let path = self.root.join("search").join(format!("{keyword}.json"));
        std::fs::read(&path).map_err(|e| IngestError::Transport {
            context: format!("search fixture {}", path.display()),
            message: e.to_string(),
        })
    }

    fn comments_page(&self, video_id: &str, page: usize) -> Result<Vec<u8>, IngestError> {
        let dir = self.root.join("comments").join(video_id);
        if !dir.is_dir() {
            return Err(IngestError::UnknownVideo(video_id.to_string()));
        }
        let path = dir.join(format!("page{page}.json"));
        std::fs::read(&path).map_err(|e| IngestError::Transport {
            context: format!("comments fixture {}", path.display()),
            message: e.to_string(),
        })
    }

    fn timestamp(&self) -> String {
        "1970-01-01T00:00:00Z".into()
    }
}

/// Fetches up to `n` comments for one video, paging through the transport
/// and debiting the ledger once per page. The ledger is checked before any
/// transport call.
pub fn fetch_comments(
    video_id: &str,
    n: usize,
    transport: &dyn Transport,
    ledger: &QuotaLedger,
) -> Result<CommentBatch, IngestError> {
    let mut comments = Vec::new();
    let mut page = 1;
    while comments.len() < n {
        ledger.try_debit(1)?;
        let bytes = match transport.comments_page(video_id, page) {
            Ok(bytes) => bytes,
            // Exhaustion: no further page fixture / no next page.
            Err(IngestError::Transport { .. }) if page > 1 => break,
            Err(e) => return Err(e),
        };
        let (mut texts, next) =
            parse_comments_page(&bytes, &format!("comments of {video_id} page {page}"))?;
        if texts.is_empty() {
            break;
        }
        comments.append(&mut texts);
        if next.is_none() {
            break;
        }
        page += 1;
    }
    comments.truncate(n);
    Ok(CommentBatch { video_id: video_id.to_string(), comments })
}

/// One crawl bookkeeping line.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CrawlRecord {
    pub keyword: String,
    pub video_id: String,
    pub fetched_at: String,
    pub comment_count: usize,
    pub status: String,
}

/// An executable unit of crawl work: search one keyword, then fetch
/// comments for each hit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WorkItem {
    pub keyword: String,
}

/// Keyword work split into what fits the ledger headroom now and what must
/// wait. Items are independent and idempotent; deferred items re-enter in
/// FIFO order on replanning.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrawlPlan {
    pub items: Vec<WorkItem>,
    pub deferred: Vec<WorkItem>,
}

/// Plans one search request per keyword against the ledger headroom.
pub fn plan_crawl(keywords: &[String], ledger: &QuotaLedger) -> CrawlPlan {
    let headroom = ledger.headroom() as usize;
    let mut items = Vec::new();
    let mut deferred = Vec::new();
    for (i, kw) in keywords.iter().enumerate() {
        let item = WorkItem { keyword: kw.clone() };
        if i < headroom {
            items.push(item);
        } else {
            deferred.push(item);
        }
    }
    CrawlPlan { items, deferred }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn search_fixture_json(ids: &[&str], include_channel: bool) -> String {
        let mut items = Vec::new();
        for id in ids {
            items.push(format!(
                r#"{{"kind":"youtube#searchResult","id":{{"kind":"youtube#video","videoId":"{id}"}}}}"#
            ));
        }
        if include_channel {
            items.insert(
                1,
                r#"{"kind":"youtube#searchResult","id":{"kind":"youtube#channel","channelId":"ch1"}}"#
                    .to_string(),
            );
        }
        format!(r#"{{"items":[{}]}}"#, items.join(","))
    }

    fn comments_page_json(texts: &[String], next: Option<&str>) -> String {
        let items: Vec<String> = texts
            .iter()
            .map(|t| {
                format!(
                    r#"{{"snippet":{{"topLevelComment":{{"snippet":{{"textDisplay":"{t}"}}}}}}}}"#
                )
            })
            .collect();
        match next {
            Some(tok) => {
                format!(r#"{{"items":[{}],"nextPageToken":"{tok}"}}"#, items.join(","))
            }
            None => format!(r#"{{"items":[{}]}}"#, items.join(",")),
        }
    }

    fn fixture_dir_with_comments(video_id: &str, total: usize) -> tempfile::TempDir {
        let dir = tempfile::tempdir().unwrap();
        let vdir = dir.path().join("comments").join(video_id);
        std::fs::create_dir_all(&vdir).unwrap();
        let pages = total.div_ceil(PAGE_SIZE);
        for p in 0..pages {
            let start = p * PAGE_SIZE;
            let end = (start + PAGE_SIZE).min(total);
            let texts: Vec<String> = (start..end).map(|i| format!("comment {i}")).collect();
            let next = if p + 1 < pages { Some("tok") } else { None };
            let mut f = std::fs::File::create(vdir.join(format!("page{}.json", p + 1))).unwrap();
            f.write_all(comments_page_json(&texts, next).as_bytes()).unwrap();
        }
        dir
    }

    #[test]
    fn one_request_per_keyword_with_encoding() {
        let config = CrawlConfig { api_key: Some(ApiKey::new("k")), ..CrawlConfig::default() };
        let reqs =
            build_search_requests(&["joy".into(), "self pity".into()], &config).unwrap();
        assert_eq!(reqs.len(), 2);
        assert_eq!(reqs[0].query, "joy");
        let url = reqs[1].to_url().unwrap();
        assert!(url.contains("q=self+pity") || url.contains("q=self%20pity"), "{url}");
        assert!(!url.contains(' '));
    }

    #[test]
    fn missing_api_key_is_rejected() {
        let config = CrawlConfig::default();
        assert!(matches!(
            build_search_requests(&["joy".into()], &config),
            Err(IngestError::MissingApiKey)
        ));
    }

    #[test]
    fn empty_keywords_rejected() {
        let config = CrawlConfig { api_key: Some(ApiKey::new("k")), ..CrawlConfig::default() };
        assert!(matches!(build_search_requests(&[], &config), Err(IngestError::NoKeywords)));
    }

    #[test]
    fn api_key_never_appears_in_debug() {
        let req = SearchRequest {
            base_url: "https://example.test/search".into(),
            api_key: ApiKey::new("SECRET123"),
            query: "joy".into(),
            part: "snippet".into(),
            content_type: "video".into(),
            max_results: 5,
        };
        let debug = format!("{req:?}");
        assert!(!debug.contains("SECRET123"));
        assert!(debug.contains("ApiKey(***)"));
    }

    #[test]
    fn search_response_ids_in_order() {
        let json = search_fixture_json(&["a1", "b2", "c3"], false);
        let ids = parse_search_response(json.as_bytes(), "t").unwrap();
        assert_eq!(ids, vec!["a1", "b2", "c3"]);
    }

    #[test]
    fn channel_items_are_skipped() {
        let json = search_fixture_json(&["a1", "b2"], true);
        let ids = parse_search_response(json.as_bytes(), "t").unwrap();
        assert_eq!(ids, vec!["a1", "b2"]);
    }

    #[test]
    fn empty_items_is_empty_list() {
        assert!(parse_search_response(br#"{"items":[]}"#, "t").unwrap().is_empty());
        assert!(parse_search_response(br#"{"kind":"x"}"#, "t").unwrap().is_empty());
    }

    #[test]
    fn malformed_json_is_structured_error() {
        assert!(matches!(
            parse_search_response(b"{not json", "t"),
            Err(IngestError::BadJson { .. })
        ));
        // Arbitrary bytes never panic.
        let garbage: Vec<u8> = (0u8..=255).collect();
        assert!(parse_search_response(&garbage, "t").is_err());
    }

    #[test]
    fn fetch_paginates_and_debits_per_page() {
        // 250 available, ask for 100: two 50-comment pages, two debits.
        let dir = fixture_dir_with_comments("vid250", 250);
        let transport = FixtureTransport::new(dir.path());
        let ledger = QuotaLedger::new(100);
        let batch = fetch_comments("vid250", 100, &transport, &ledger).unwrap();
        assert_eq!(batch.comments.len(), 100);
        assert_eq!(ledger.used(), 2);
        assert_eq!(batch.comments[0], "comment 0");
        assert_eq!(batch.comments[99], "comment 99");
    }

    #[test]
    fn fetch_stops_at_exhaustion_without_error() {
        let dir = fixture_dir_with_comments("vid10", 10);
        let transport = FixtureTransport::new(dir.path());
        let ledger = QuotaLedger::default();
        let batch = fetch_comments("vid10", 100, &transport, &ledger).unwrap();
        assert_eq!(batch.comments.len(), 10);
        assert_eq!(ledger.used(), 1);
    }

    #[test]
    fn ledger_at_limit_rejects_before_transport() {
        let dir = tempfile::tempdir().unwrap(); // no fixtures at all
        let transport = FixtureTransport::new(dir.path());
        let ledger = QuotaLedger::new(0);
        assert!(matches!(
            fetch_comments("anything", 10, &transport, &ledger),
            Err(IngestError::QuotaExceeded { limit: 0 })
        ));
    }

    #[test]
    fn unknown_video_reported() {
        let dir = fixture_dir_with_comments("known", 10);
        let transport = FixtureTransport::new(dir.path());
        let ledger = QuotaLedger::default();
        assert!(matches!(
            fetch_comments("unknown", 10, &transport, &ledger),
            Err(IngestError::UnknownVideo(v)) if v == "unknown"
        ));
    }

    #[test]
    fn ledger_never_exceeds_limit_under_contention() {
        let ledger = std::sync::Arc::new(QuotaLedger::new(100));
        let mut handles = Vec::new();
        for _ in 0..8 {
            let ledger = ledger.clone();
            handles.push(std::thread::spawn(move || {
                let mut granted = 0u64;
                for _ in 0..50 {
                    if ledger.try_debit(1).is_ok() {
                        granted += 1;
                    }
                }
                granted
            }));
        }
        let total: u64 = handles.into_iter().map(|h| h.join().unwrap()).sum();
        assert_eq!(total, 100);
        assert_eq!(ledger.used(), 100);
    }

    #[test]
    fn plan_respects_headroom_fifo() {
        let keywords: Vec<String> = (0..5).map(|i| format!("kw{i}")).collect();
        let ledger = QuotaLedger::new(3);
        let plan = plan_crawl(&keywords, &ledger);
        assert_eq!(plan.items.len(), 3);
        assert_eq!(plan.deferred.len(), 2);
        assert_eq!(plan.deferred[0].keyword, "kw3");

        // After one completion the first deferred item enters the new plan.
        ledger.try_debit(3).unwrap(); // the 3 planned searches ran
        let remaining: Vec<String> = plan.deferred.iter().map(|w| w.keyword.clone()).collect();
        let replanned = plan_crawl(&remaining, &QuotaLedger::new(1));
        assert_eq!(replanned.items, vec![WorkItem { keyword: "kw3".into() }]);
        assert_eq!(replanned.deferred, vec![WorkItem { keyword: "kw4".into() }]);
    }

    #[test]
    fn empty_keywords_make_empty_plan() {
        let plan = plan_crawl(&[], &QuotaLedger::default());
        assert!(plan.items.is_empty() && plan.deferred.is_empty());
    }
}
