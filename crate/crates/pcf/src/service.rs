//! HTTP service: model upload, base reports, what-if scenarios and curve
//! samples. Stored models are immutable snapshots behind an `Arc`; scenario
//! evaluation builds a fresh variant and never touches the store.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, RwLock};
use std::time::SystemTime;

use axum::body::Bytes;
use axum::extract::{DefaultBodyLimit, Path as UrlPath, Query, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use pcf_core::risk::{evaluate, what_if_delta, RiskReport, WhatIfDelta};
use serde::{Deserialize, Serialize};

use crate::curves::{self, CurveKind};
use crate::diagnostics::Diagnostic;
use crate::document::{ModelDocument, ScenarioDocument, ScenarioRecord};
use crate::report::{to_json, ReportDocument};
use crate::validate::{self, from_core, LoadedModel};

pub const DEFAULT_BODY_LIMIT: usize = 8 * 1024 * 1024;

#[derive(Debug, Clone)]
pub struct ServiceConfig {
    /// Largest accepted request body, bytes.
    pub body_limit: usize,
    /// Uploaded models are written here as `<model_id>.json`, and files
    /// already there are loaded at startup.
    pub model_dir: Option<PathBuf>,
    /// Static files served for any path not matched by the API.
    pub ui_dir: Option<PathBuf>,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        Self {
            body_limit: DEFAULT_BODY_LIMIT,
            model_dir: None,
            ui_dir: None,
        }
    }
}

/// A model accepted by the service.
#[derive(Debug)]
pub struct SessionModel {
    pub model_id: String,
    pub loaded: LoadedModel,
    pub base_report: ReportDocument,
    /// `base_report` serialized once, so every GET returns the same bytes.
    pub report_body: Bytes,
    pub created_at: SystemTime,
}

#[derive(Debug, Default)]
pub struct ModelStore {
    models: RwLock<HashMap<String, Arc<SessionModel>>>,
    counter: AtomicU64,
}

impl ModelStore {
    pub fn get(&self, id: &str) -> Option<Arc<SessionModel>> {
        self.models.read().expect("store lock").get(id).cloned()
    }

    pub fn len(&self) -> usize {
        self.models.read().expect("store lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn fresh_id(&self) -> String {
        loop {
            let id = format!("m{}", self.counter.fetch_add(1, Ordering::Relaxed) + 1);
            if self.get(&id).is_none() {
                return id;
            }
        }
    }

    /// Inserts under a new id unless `id` is given.
    fn insert(&self, id: Option<String>, loaded: LoadedModel) -> Result<Arc<SessionModel>, Diagnostic> {
        let report = evaluate(&loaded.model).map_err(|e| from_core(&e, ""))?;
        let model_id = id.unwrap_or_else(|| self.fresh_id());
        let base_report = ReportDocument {
            model: loaded.document.metadata.name.clone(),
            currency_label: loaded.document.metadata.currency_label.clone(),
            report,
        };
        let session = Arc::new(SessionModel {
            report_body: Bytes::from(to_json(&base_report)),
            model_id: model_id.clone(),
            loaded,
            base_report,
            created_at: SystemTime::now(),
        });
        self.models.write().expect("store lock").insert(model_id, session.clone());
        Ok(session)
    }
}

#[derive(Debug)]
struct AppState {
    store: ModelStore,
    model_dir: Option<PathBuf>,
}

/// Loads every `*.json` model in `dir`, keyed by file stem. Files that do
/// not validate are reported and skipped.
fn preload(store: &ModelStore, dir: &Path) -> std::io::Result<Vec<(PathBuf, Vec<Diagnostic>)>> {
    let mut rejected = Vec::new();
    let mut entries: Vec<_> = std::fs::read_dir(dir)?.collect::<Result<_, _>>()?;
    entries.sort_by_key(|e| e.path());
    for entry in entries {
        let path = entry.path();
        if path.extension().and_then(|e| e.to_str()) != Some("json") {
            continue;
        }
        let Some(stem) = path.file_stem().and_then(|s| s.to_str()).map(str::to_owned) else {
            continue;
        };
        let bytes = std::fs::read(&path)?;
        let outcome = validate::load_model(&bytes).and_then(|m| store.insert(Some(stem), m).map_err(|d| vec![d]));
        if let Err(diags) = outcome {
            rejected.push((path, diags));
        }
    }
    Ok(rejected)
}

/// The service router with its store. Fails if `model_dir` cannot be read
/// or created.
pub fn router(config: ServiceConfig) -> std::io::Result<Router> {
    let store = ModelStore::default();
    if let Some(dir) = &config.model_dir {
        std::fs::create_dir_all(dir)?;
        for (path, diags) in preload(&store, dir)? {
            eprintln!("skipping {}: {} diagnostic(s)", path.display(), diags.len());
            for d in diags.iter().filter(|d| d.is_error()) {
                eprintln!("  {d}");
            }
        }
    }
    let state = Arc::new(AppState {
        store,
        model_dir: config.model_dir,
    });
    let api = Router::new()
        .route("/models", post(create_model))
        .route("/models/{id}/report", get(get_report))
        .route("/models/{id}/scenarios", post(run_scenario))
        .route("/models/{id}/curves", get(get_curve))
        .layer(DefaultBodyLimit::max(config.body_limit))
        .with_state(state);
    Ok(match config.ui_dir {
        Some(dir) => api.fallback_service(tower_http::services::ServeDir::new(dir)),
        None => api,
    })
}

fn json(status: StatusCode, body: impl Into<Bytes>) -> Response {
    (status, [(header::CONTENT_TYPE, "application/json")], body.into()).into_response()
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    error: &'a str,
    #[serde(skip_serializing_if = "<[_]>::is_empty")]
    diagnostics: &'a [Diagnostic],
}

fn error(status: StatusCode, message: &str, diagnostics: &[Diagnostic]) -> Response {
    json(
        status,
        to_json(&ErrorBody {
            error: message,
            diagnostics,
        }),
    )
}

fn unknown_model(id: &str) -> Response {
    error(StatusCode::NOT_FOUND, &format!("unknown model `{id}`"), &[])
}

#[derive(Serialize)]
struct Created<'a> {
    model_id: &'a str,
    report: &'a ReportDocument,
    warnings: &'a [Diagnostic],
}

async fn create_model(State(state): State<Arc<AppState>>, body: Bytes) -> Response {
    if body.iter().all(u8::is_ascii_whitespace) {
        return error(StatusCode::BAD_REQUEST, "empty body", &[]);
    }
    let doc: ModelDocument = match validate::parse_document(&body) {
        Ok(doc) => doc,
        Err(d) => return error(StatusCode::BAD_REQUEST, "malformed model document", &[d]),
    };
    let loaded = match validate::build_model(doc) {
        Ok(m) => m,
        Err(diags) => return error(StatusCode::UNPROCESSABLE_ENTITY, "invalid model", &diags),
    };
    let session = match state.store.insert(None, loaded) {
        Ok(s) => s,
        Err(d) => return error(StatusCode::UNPROCESSABLE_ENTITY, "model cannot be evaluated", &[d]),
    };
    if let Some(dir) = &state.model_dir {
        let path = dir.join(format!("{}.json", session.model_id));
        if let Err(e) = std::fs::write(&path, session.loaded.document.to_json()) {
            return error(StatusCode::INTERNAL_SERVER_ERROR, &format!("writing {}: {e}", path.display()), &[]);
        }
    }
    json(
        StatusCode::CREATED,
        to_json(&Created {
            model_id: &session.model_id,
            report: &session.base_report,
            warnings: &session.loaded.warnings,
        }),
    )
}

async fn get_report(State(state): State<Arc<AppState>>, UrlPath(id): UrlPath<String>) -> Response {
    match state.store.get(&id) {
        Some(s) => json(StatusCode::OK, s.report_body.clone()),
        None => unknown_model(&id),
    }
}

/// Body of a successful scenario evaluation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioResult {
    pub model_id: String,
    pub scenario: String,
    pub report: RiskReport,
    pub delta: WhatIfDelta,
}

/// Accepts a scenario file (`{"scenario": {...}}`) or the bare scenario.
fn parse_scenario_body(body: &[u8]) -> Result<ScenarioRecord, Diagnostic> {
    match validate::parse_scenario(body) {
        Ok(ScenarioDocument { scenario, .. }) => Ok(scenario),
        Err(first) => serde_json::from_slice::<ScenarioRecord>(body).map_err(|_| first),
    }
}

/// Evaluates `record` against a stored model.
pub fn evaluate_scenario(session: &SessionModel, record: &ScenarioRecord) -> Result<ScenarioResult, Vec<Diagnostic>> {
    let variant = validate::scenario_variant(record, &session.loaded.model)?;
    let report = evaluate(&variant).map_err(|e| vec![from_core(&e, "scenario")])?;
    let delta = what_if_delta(&session.base_report.report, &report).map_err(|e| vec![from_core(&e, "scenario")])?;
    Ok(ScenarioResult {
        model_id: session.model_id.clone(),
        scenario: record.name.clone(),
        report,
        delta,
    })
}

async fn run_scenario(State(state): State<Arc<AppState>>, UrlPath(id): UrlPath<String>, body: Bytes) -> Response {
    let Some(session) = state.store.get(&id) else {
        return unknown_model(&id);
    };
    let record = if body.iter().all(u8::is_ascii_whitespace) {
        ScenarioRecord::default()
    } else {
        match parse_scenario_body(&body) {
            Ok(r) => r,
            Err(d) => return error(StatusCode::BAD_REQUEST, "malformed scenario", &[d]),
        }
    };
    match evaluate_scenario(&session, &record) {
        Ok(result) => json(StatusCode::OK, to_json(&result)),
        Err(diags) => error(StatusCode::UNPROCESSABLE_ENTITY, "invalid scenario", &diags),
    }
}

#[derive(Debug, Deserialize)]
struct CurveQuery {
    kind: CurveKind,
    target: String,
}

async fn get_curve(State(state): State<Arc<AppState>>, UrlPath(id): UrlPath<String>, Query(q): Query<CurveQuery>) -> Response {
    let Some(session) = state.store.get(&id) else {
        return unknown_model(&id);
    };
    match curves::sample(&session.loaded.model, q.kind, &q.target) {
        Ok(c) => json(StatusCode::OK, to_json(&c)),
        Err(e) => error(StatusCode::NOT_FOUND, &e.to_string(), &[]),
    }
}

/// Binds `addr` and serves until interrupted.
pub async fn serve(addr: &str, config: ServiceConfig) -> std::io::Result<()> {
    let app = router(config)?;
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, app)
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
