//! JSON-over-HTTP session API for interactive exploration.
//!
//! Sessions live in memory and are dropped after an idle period. Each
//! session sits behind its own mutex, so requests against one session are
//! applied one at a time and every response reflects a consistent state.

use std::collections::HashMap;
use std::io::Write;
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use atam::document::{self, to_json, PlacementDocument};
use atam::{render_svg, Point, RenderOptions, Session, SessionError};
use axum::body::Bytes;
use axum::extract::{Path, Query, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use serde::{Deserialize, Serialize};
use tower_http::services::ServeDir;

use crate::commands::ServeArgs;

struct Entry {
    name: String,
    session: Session,
    last_used: Instant,
}

#[derive(Clone)]
pub struct AppState {
    sessions: Arc<Mutex<HashMap<String, Arc<Mutex<Entry>>>>>,
    ttl: Duration,
}

impl AppState {
    pub fn new(ttl: Duration) -> Self {
        AppState {
            sessions: Arc::default(),
            ttl,
        }
    }

    pub fn session_count(&self) -> usize {
        self.sessions.lock().unwrap().len()
    }

    /// Drops sessions idle for longer than the TTL.
    pub fn sweep(&self) {
        let now = Instant::now();
        self.sessions.lock().unwrap().retain(|_, e| {
            // A session in use is not idle.
            e.try_lock()
                .map(|e| now.duration_since(e.last_used) <= self.ttl)
                .unwrap_or(true)
        });
    }

    fn get(&self, id: &str) -> Result<Arc<Mutex<Entry>>, ApiError> {
        self.sweep();
        self.sessions
            .lock()
            .unwrap()
            .get(id)
            .cloned()
            .ok_or_else(|| ApiError::new(StatusCode::NOT_FOUND, "unknown_session", format!("no session {id:?}")))
    }
}

#[derive(Debug, Serialize)]
pub struct ApiError {
    #[serde(skip)]
    status: StatusCode,
    code: &'static str,
    message: String,
}

impl ApiError {
    fn new(status: StatusCode, code: &'static str, message: impl Into<String>) -> Self {
        ApiError {
            status,
            code,
            message: message.into(),
        }
    }

    fn malformed(message: impl Into<String>) -> Self {
        ApiError::new(StatusCode::BAD_REQUEST, "malformed", message)
    }
}

impl From<SessionError> for ApiError {
    fn from(e: SessionError) -> Self {
        let (status, code) = match e {
            SessionError::UnknownTile(_) | SessionError::IllegalAttachment { .. } => {
                (StatusCode::CONFLICT, "illegal_attachment")
            }
            SessionError::AtSeed => (StatusCode::CONFLICT, "at_seed"),
            SessionError::UnknownBranch(_) => (StatusCode::NOT_FOUND, "unknown_branch"),
            SessionError::BadBranchName => (StatusCode::BAD_REQUEST, "malformed"),
        };
        ApiError::new(status, code, e.to_string())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        json_response(self.status, to_json(&self))
    }
}

fn json_response(status: StatusCode, body: String) -> Response {
    (status, [(header::CONTENT_TYPE, "application/json")], body).into_response()
}

#[derive(Serialize)]
struct FrontierEntry {
    point: Point,
    tile: String,
    bonds: u32,
}

#[derive(Serialize)]
struct StateDocument<'a> {
    id: &'a str,
    name: &'a str,
    assembly: Vec<PlacementDocument>,
    frontier: Vec<FrontierEntry>,
    terminal: bool,
    history: Vec<PlacementDocument>,
    branches: Vec<&'a str>,
}

fn state_json(id: &str, e: &Entry) -> String {
    let s = &e.session;
    let sys = s.system();
    let frontier: Vec<FrontierEntry> = s
        .frontier()
        .into_iter()
        .map(|a| FrontierEntry {
            point: a.point,
            tile: sys.name(a.tile).to_string(),
            bonds: a.strength,
        })
        .collect();
    to_json(&StateDocument {
        id,
        name: &e.name,
        assembly: document::placements(sys, s.current()),
        terminal: frontier.is_empty(),
        frontier,
        history: document::steps_doc(sys, s.history()),
        branches: s.branches().keys().map(String::as_str).collect(),
    })
}

fn parse_body<'a, T: Deserialize<'a>>(body: &'a Bytes) -> Result<T, ApiError> {
    serde_json::from_slice(body).map_err(|e| ApiError::malformed(e.to_string()))
}

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/api/sessions", post(create))
        .route("/api/sessions/{id}", get(show))
        .route("/api/sessions/{id}/attach", post(attach))
        .route("/api/sessions/{id}/undo", post(undo))
        .route("/api/sessions/{id}/branch", post(branch))
        .route("/api/sessions/{id}/checkout", post(checkout))
        .route("/api/sessions/{id}/branches", get(branches))
        .route("/api/sessions/{id}/branches/diff", get(diff))
        .route("/api/sessions/{id}/svg", get(svg))
        .with_state(state)
}

async fn create(State(state): State<AppState>, body: Bytes) -> Result<Response, ApiError> {
    let text = std::str::from_utf8(&body).map_err(|e| ApiError::malformed(e.to_string()))?;
    let parsed = document::parse_system(text).map_err(|e| ApiError::malformed(e.to_string()))?;
    let id = uuid::Uuid::new_v4().simple().to_string();
    let entry = Entry {
        name: parsed.name,
        session: Session::new(parsed.system),
        last_used: Instant::now(),
    };
    let body = state_json(&id, &entry);
    state.sweep();
    state
        .sessions
        .lock()
        .unwrap()
        .insert(id, Arc::new(Mutex::new(entry)));
    Ok(json_response(StatusCode::CREATED, body))
}

/// Runs `f` on the locked session and renders the resulting state.
fn with_session<F>(state: &AppState, id: &str, f: F) -> Result<Response, ApiError>
where
    F: FnOnce(&mut Session) -> Result<(), ApiError>,
{
    let entry = state.get(id)?;
    let mut e = entry.lock().unwrap();
    e.last_used = Instant::now();
    f(&mut e.session)?;
    Ok(json_response(StatusCode::OK, state_json(id, &e)))
}

async fn show(State(state): State<AppState>, Path(id): Path<String>) -> Result<Response, ApiError> {
    with_session(&state, &id, |_| Ok(()))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AttachRequest {
    point: Point,
    tile: String,
}

async fn attach(State(state): State<AppState>, Path(id): Path<String>, body: Bytes) -> Result<Response, ApiError> {
    let req: AttachRequest = parse_body(&body)?;
    with_session(&state, &id, |s| {
        s.attach(req.point, &req.tile)?;
        Ok(())
    })
}

async fn undo(State(state): State<AppState>, Path(id): Path<String>) -> Result<Response, ApiError> {
    with_session(&state, &id, |s| {
        s.undo()?;
        Ok(())
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NameRequest {
    name: String,
}

async fn branch(State(state): State<AppState>, Path(id): Path<String>, body: Bytes) -> Result<Response, ApiError> {
    let req: NameRequest = parse_body(&body)?;
    with_session(&state, &id, |s| Ok(s.save_branch(&req.name)?))
}

async fn checkout(State(state): State<AppState>, Path(id): Path<String>, body: Bytes) -> Result<Response, ApiError> {
    let req: NameRequest = parse_body(&body)?;
    with_session(&state, &id, |s| Ok(s.checkout(&req.name)?))
}

#[derive(Serialize)]
struct BranchDocument {
    name: String,
    steps: Vec<PlacementDocument>,
}

async fn branches(State(state): State<AppState>, Path(id): Path<String>) -> Result<Response, ApiError> {
    let entry = state.get(&id)?;
    let mut e = entry.lock().unwrap();
    e.last_used = Instant::now();
    let sys = e.session.system();
    let list: Vec<BranchDocument> = e
        .session
        .branches()
        .iter()
        .map(|(name, steps)| BranchDocument {
            name: name.clone(),
            steps: document::steps_doc(sys, steps),
        })
        .collect();
    Ok(json_response(StatusCode::OK, to_json(&list)))
}

async fn diff(
    State(state): State<AppState>,
    Path(id): Path<String>,
    Query(query): Query<HashMap<String, String>>,
) -> Result<Response, ApiError> {
    let (Some(a), Some(b)) = (query.get("a"), query.get("b")) else {
        return Err(ApiError::malformed("query parameters a and b are required"));
    };
    let entry = state.get(&id)?;
    let mut e = entry.lock().unwrap();
    e.last_used = Instant::now();
    let d = e.session.diff(a, b)?;
    Ok(json_response(StatusCode::OK, to_json(&d)))
}

async fn svg(State(state): State<AppState>, Path(id): Path<String>) -> Result<Response, ApiError> {
    let entry = state.get(&id)?;
    let mut e = entry.lock().unwrap();
    e.last_used = Instant::now();
    let s = &e.session;
    let body = render_svg(s.system(), s.current(), RenderOptions { frontier: true });
    Ok((StatusCode::OK, [(header::CONTENT_TYPE, "image/svg+xml")], body).into_response())
}

/// Builds the full application: the API plus, if given, a static bundle at `/`.
pub fn app(state: AppState, static_dir: Option<&std::path::Path>) -> Router {
    let api = router(state);
    match static_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api,
    }
}

pub fn serve(args: ServeArgs, log: &mut dyn Write) -> std::io::Result<()> {
    let state = AppState::new(Duration::from_secs(args.ttl));
    if let Some(dir) = &args.static_dir {
        if !dir.is_dir() {
            let _ = writeln!(log, "warning: static directory {} not found, serving the API only", dir.display());
        }
    }
    let static_dir = args.static_dir.filter(|d| d.is_dir());
    let router = app(state.clone(), static_dir.as_deref());
    let runtime = tokio::runtime::Runtime::new()?;
    runtime.block_on(async move {
        let listener = tokio::net::TcpListener::bind((args.host.as_str(), args.port)).await?;
        let _ = writeln!(log, "listening on http://{}", listener.local_addr()?);
        let sweeper = state.clone();
        tokio::spawn(async move {
            let mut tick = tokio::time::interval(Duration::from_secs(60));
            loop {
                tick.tick().await;
                sweeper.sweep();
            }
        });
        axum::serve(listener, router).await
    })
}
