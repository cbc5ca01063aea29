//! HTTP play server: a human plays either role of any game variant against
//! the exact engine, with hints.
//!
//! | method | path | body / query |
//! |---|---|---|
//! | POST | `/games` | `{"spec", "family" \| "graph", "human_role", "cap"?}` |
//! | GET | `/games/{id}` | |
//! | GET | `/games/{id}/options` | `?vertex=v` |
//! | POST | `/games/{id}/move` | `{"vertex": v}` or `{"image": [..]}` |
//! | POST | `/games/{id}/engine-move` | |
//! | GET | `/games/{id}/hint` | |
//!
//! Errors are `{"error": code, "detail": text}` with status 400 (bad
//! input), 404 (unknown session), 409 (out of turn or finished) or 422
//! (illegal choice).

pub mod error;
pub mod session;

use std::collections::HashMap;
use std::fs::File;
use std::io::Write;
use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::{Arc, Mutex, RwLock};

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, Query, State};
use axum::routing::{get, post};
use axum::{Json, Router};
use matchgame::families::parse_family;
use matchgame::solver::DEFAULT_SOLVE_CAP;
use matchgame::{GameSpec, Graph, Role};
use serde::Deserialize;
use serde_json::Value;
use tower_http::cors::CorsLayer;

pub use error::ApiError;
pub use session::{Session, Status, SubMove};

#[derive(Clone, Debug)]
pub struct Config {
    /// Largest graph solved exactly; larger graphs get the greedy engine.
    pub cap: usize,
    /// Append-only JSON-lines replay log.
    pub log: Option<PathBuf>,
}

impl Default for Config {
    fn default() -> Self {
        Config { cap: DEFAULT_SOLVE_CAP, log: None }
    }
}

type Shared = Arc<Mutex<Session>>;

pub struct AppState {
    config: Config,
    sessions: RwLock<HashMap<String, Shared>>,
    log: Option<Mutex<File>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CreateBody {
    spec: GameSpec,
    #[serde(default)]
    family: Option<String>,
    #[serde(default)]
    graph: Option<Graph>,
    human_role: Role,
    #[serde(default)]
    cap: Option<usize>,
}

#[derive(Deserialize)]
struct OptionsQuery {
    vertex: usize,
}

type Reply = Result<Json<Value>, ApiError>;

fn json(v: impl serde::Serialize) -> Reply {
    Ok(Json(serde_json::to_value(v).expect("serializable reply")))
}

impl AppState {
    pub fn new(config: Config) -> std::io::Result<Arc<AppState>> {
        let log = match &config.log {
            Some(path) => Some(Mutex::new(File::options().create(true).append(true).open(path)?)),
            None => None,
        };
        Ok(Arc::new(AppState { config, sessions: RwLock::new(HashMap::new()), log }))
    }

    fn session(&self, id: &str) -> Result<Shared, ApiError> {
        let map = self.sessions.read().expect("session map lock");
        map.get(id).cloned().ok_or_else(|| ApiError::not_found(id))
    }

    fn record(&self, s: &Session) {
        if let Some(file) = &self.log {
            let line = serde_json::to_string(&s.log_record()).expect("log record");
            let mut f = file.lock().expect("log lock");
            // The log is best effort; a full disk must not break play.
            let _ = writeln!(f, "{line}");
        }
    }
}

/// Runs `f` on the session under its lock, off the async workers.
async fn with_session<T: Send + 'static>(
    app: Arc<AppState>,
    id: String,
    f: impl FnOnce(&AppState, &mut Session) -> Result<T, ApiError> + Send + 'static,
) -> Result<T, ApiError> {
    let shared = app.session(&id)?;
    tokio::task::spawn_blocking(move || {
        let mut s = shared.lock().expect("session lock");
        f(&app, &mut s)
    })
    .await
    .expect("session task")
}

async fn create(State(app): State<Arc<AppState>>, body: Result<Json<CreateBody>, JsonRejection>) -> Reply {
    let Json(body) = body.map_err(|e| ApiError::bad_request(e.body_text()))?;
    let graph = match (body.family, body.graph) {
        (Some(f), None) => parse_family(&f).map_err(|e| ApiError::bad_request(e.to_string()))?.graph,
        (None, Some(g)) => g,
        _ => return Err(ApiError::bad_request("give exactly one of \"family\" or \"graph\"")),
    };
    let cap = body.cap.unwrap_or(app.config.cap);
    let id = uuid::Uuid::new_v4().simple().to_string();
    let (spec, role) = (body.spec, body.human_role);
    let view = tokio::task::spawn_blocking({
        let app = Arc::clone(&app);
        move || {
            let s = Session::new(id.clone(), spec, graph, role, cap);
            app.record(&s);
            let view = s.view();
            app.sessions.write().expect("session map lock").insert(id, Arc::new(Mutex::new(s)));
            view
        }
    })
    .await
    .expect("create task");
    json(view)
}

async fn get_view(State(app): State<Arc<AppState>>, Path(id): Path<String>) -> Reply {
    json(with_session(app, id, |_, s| Ok(s.view())).await?)
}

async fn options(
    State(app): State<Arc<AppState>>,
    Path(id): Path<String>,
    query: Result<Query<OptionsQuery>, axum::extract::rejection::QueryRejection>,
) -> Reply {
    let Query(q) = query.map_err(|e| ApiError::bad_request(e.body_text()))?;
    json(with_session(app, id, move |_, s| s.options(q.vertex)).await?)
}

async fn post_move(
    State(app): State<Arc<AppState>>,
    Path(id): Path<String>,
    body: Result<Json<SubMove>, JsonRejection>,
) -> Reply {
    let Json(sub) = body.map_err(|e| ApiError::bad_request(e.body_text()))?;
    let view = with_session(app, id, move |app, s| {
        s.human_move(sub)?;
        app.record(s);
        Ok(s.view())
    })
    .await?;
    json(view)
}

async fn engine_move(State(app): State<Arc<AppState>>, Path(id): Path<String>) -> Reply {
    let view = with_session(app, id, |app, s| {
        s.engine_move()?;
        app.record(s);
        Ok(s.view())
    })
    .await?;
    json(view)
}

async fn hint(State(app): State<Arc<AppState>>, Path(id): Path<String>) -> Reply {
    json(with_session(app, id, |_, s| Ok(s.hint())).await?)
}

pub fn router(app: Arc<AppState>) -> Router {
    Router::new()
        .route("/games", post(create))
        .route("/games/{id}", get(get_view))
        .route("/games/{id}/options", get(options))
        .route("/games/{id}/move", post(post_move))
        .route("/games/{id}/engine-move", post(engine_move))
        .route("/games/{id}/hint", get(hint))
        .layer(CorsLayer::permissive())
        .with_state(app)
}

/// Serves until the process is stopped.
pub async fn serve(addr: SocketAddr, config: Config) -> std::io::Result<()> {
    let app = AppState::new(config)?;
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router(app)).await
}
