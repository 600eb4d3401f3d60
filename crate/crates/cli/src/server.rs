//! JSON API over the design space, renderer and notation helpers.
//!
//! Tables derived from the design space are computed once in [`AppState`];
//! handlers only read them.

use std::collections::HashMap;
use std::net::SocketAddr;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Query, State};
use axum::http::{header, StatusCode};
use axum::response::{Html, IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use omvis_core::design::{self, AttrSlot, Channel, Mark, OtherAttrType, Rule, VisConfig};
use omvis_core::grammar;
use omvis_core::lab::dataset::{gallery_dataset, gen_dataset, Dataset, Row};
use omvis_core::omv;
use omvis_core::render::{render, ChartDesign, RenderError, RenderSpec, RenderTarget};

use crate::default_size;

const INDEX_HTML: &str = include_str!("../assets/index.html");

/// Largest inline dataset accepted by `/api/render`.
pub const MAX_ROWS: usize = 50;

pub struct AppState {
    all: Vec<VisConfig>,
    space: Value,
}

impl AppState {
    pub fn new() -> Self {
        let all = design::enumerate_all();
        let viable: Vec<VisConfig> = all.iter().copied().filter(|c| design::validate(c).viable).collect();
        let canonical = viable.iter().filter(|c| design::is_canonical(c)).count();
        let space = json!({
            "marks": Mark::ALL,
            "channels": Channel::ALL,
            "attrs": AttrSlot::ALL,
            "other_types": OtherAttrType::ALL,
            "rules": Rule::ALL,
            "eligibility": design::eligibility(&viable),
            "counts": {"total": all.len(), "viable": viable.len(), "canonical": canonical},
        });
        Self { all, space }
    }
}

impl Default for AppState {
    fn default() -> Self {
        Self::new()
    }
}

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    code: &'static str,
    message: String,
    position: Option<usize>,
}

impl ApiError {
    fn new(status: StatusCode, code: &'static str, message: impl Into<String>) -> Self {
        Self { status, code, message: message.into(), position: None }
    }

    fn bad_request(code: &'static str, message: impl Into<String>) -> Self {
        Self::new(StatusCode::BAD_REQUEST, code, message)
    }
}

impl From<grammar::ParseError> for ApiError {
    fn from(e: grammar::ParseError) -> Self {
        Self { position: Some(e.position()), ..Self::bad_request(e.code(), e.to_string()) }
    }
}

impl From<RenderError> for ApiError {
    fn from(e: RenderError) -> Self {
        let (status, code) = match e {
            RenderError::DomainExceeded { .. } => (StatusCode::UNPROCESSABLE_ENTITY, "domain_exceeded"),
            RenderError::UnrenderableConfig { .. } => (StatusCode::UNPROCESSABLE_ENTITY, "unrenderable_config"),
            RenderError::Scale(_) => (StatusCode::UNPROCESSABLE_ENTITY, "scale_error"),
            RenderError::EmptyDataset => (StatusCode::BAD_REQUEST, "empty_dataset"),
            RenderError::UnknownHighlight(_) => (StatusCode::BAD_REQUEST, "unknown_highlight"),
            RenderError::InvalidSize { .. } => (StatusCode::BAD_REQUEST, "invalid_size"),
        };
        Self::new(status, code, e.to_string())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let mut body = json!({"error": self.code, "message": self.message});
        if let Some(p) = self.position {
            body["position"] = json!(p);
        }
        (self.status, Json(body)).into_response()
    }
}

type ApiResult<T> = Result<T, ApiError>;

/// Bodies are parsed by hand so malformed JSON gets the structured error
/// shape too.
fn parse_body<T: DeserializeOwned>(body: &Bytes) -> ApiResult<T> {
    serde_json::from_slice(body).map_err(|e| ApiError::bad_request("invalid_json", e.to_string()))
}

pub fn router() -> Router {
    router_with(Arc::new(AppState::new()))
}

pub fn router_with(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/", get(index))
        .route("/index.html", get(index))
        .route("/api/space", get(space))
        .route("/api/validate", post(validate))
        .route("/api/enumerate", get(enumerate))
        .route("/api/render", post(render_chart))
        .route("/api/decompose", post(decompose))
        .with_state(state)
}

pub async fn serve(addr: SocketAddr) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("omvis: listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router()).await
}

async fn index() -> Html<&'static str> {
    Html(INDEX_HTML)
}

async fn space(State(state): State<Arc<AppState>>) -> Json<Value> {
    Json(state.space.clone())
}

#[derive(Deserialize)]
struct ValidateRequest {
    config: String,
}

#[derive(Serialize)]
struct ValidateResponse {
    viable: bool,
    violations: Vec<Rule>,
    /// Normalized serialization of the parsed config.
    config: String,
}

async fn validate(body: Bytes) -> ApiResult<Json<ValidateResponse>> {
    let req: ValidateRequest = parse_body(&body)?;
    let cfg = grammar::parse(&req.config)?;
    let verdict = design::validate(&cfg);
    Ok(Json(ValidateResponse {
        viable: verdict.viable,
        violations: verdict.violations,
        config: grammar::serialize(&cfg),
    }))
}

/// `?viable` alone or `?viable=true` both switch the filter on.
fn flag(query: &HashMap<String, String>, name: &str) -> ApiResult<bool> {
    match query.get(name).map(String::as_str) {
        None | Some("false") | Some("0") => Ok(false),
        Some("") | Some("true") | Some("1") => Ok(true),
        Some(other) => Err(ApiError::bad_request("invalid_query", format!("{name}={other} is not a boolean"))),
    }
}

#[derive(Serialize)]
struct EnumeratedConfig {
    config: String,
    #[serde(flatten)]
    fields: VisConfig,
    eplusm: bool,
    viable: bool,
    violations: Vec<Rule>,
}

async fn enumerate(
    State(state): State<Arc<AppState>>,
    Query(query): Query<HashMap<String, String>>,
) -> ApiResult<Json<Vec<EnumeratedConfig>>> {
    let (viable_only, dedupe) = (flag(&query, "viable")?, flag(&query, "dedupe")?);
    let out = state
        .all
        .iter()
        .filter(|c| !dedupe || design::is_canonical(c))
        .filter_map(|c| {
            let verdict = design::validate(c);
            (verdict.viable || !viable_only).then(|| EnumeratedConfig {
                config: grammar::serialize(c),
                fields: *c,
                eplusm: c.eplusm(),
                viable: verdict.viable,
                violations: verdict.violations,
            })
        })
        .collect();
    Ok(Json(out))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RenderRequest {
    config: Option<String>,
    design: Option<String>,
    dataset_id: Option<u32>,
    seed: Option<u64>,
    rows: Option<Vec<Row>>,
    width: Option<f64>,
    height: Option<f64>,
    #[serde(default)]
    highlight: Vec<String>,
    /// Inclusive exponent range of the value axis.
    domain: Option<[i32; 2]>,
}

fn request_dataset(req: &RenderRequest) -> ApiResult<Dataset> {
    match (&req.rows, req.dataset_id) {
        (Some(_), Some(_)) => Err(ApiError::bad_request("invalid_request", "give rows or dataset_id, not both")),
        (Some(rows), None) => {
            if rows.len() > MAX_ROWS {
                return Err(ApiError::bad_request("too_many_rows", format!("at most {MAX_ROWS} rows")));
            }
            if let Some(r) = rows.iter().find(|r| !(r.value.is_finite() && r.value > 0.0)) {
                return Err(ApiError::bad_request("invalid_value", format!("row {}: value must be positive", r.label)));
            }
            Ok(Dataset::from_rows(0, 0, rows.clone()))
        }
        (None, Some(id)) => {
            let seed =
                req.seed.ok_or_else(|| ApiError::bad_request("missing_seed", "dataset_id needs an explicit seed"))?;
            Ok(gen_dataset(id, seed))
        }
        (None, None) => Ok(gallery_dataset()),
    }
}

async fn render_chart(body: Bytes) -> ApiResult<Response> {
    let req: RenderRequest = parse_body(&body)?;
    let target = match (&req.config, &req.design) {
        (Some(c), None) => RenderTarget::Generic(grammar::parse(c)?),
        (None, Some(d)) => RenderTarget::Design(
            d.parse::<ChartDesign>().map_err(|e| ApiError::bad_request("unknown_design", e.to_string()))?,
        ),
        _ => return Err(ApiError::bad_request("invalid_request", "give exactly one of config and design")),
    };
    let (w, h) = default_size(&target);
    let mut spec = RenderSpec::new(target, request_dataset(&req)?)
        .with_size(req.width.unwrap_or(w), req.height.unwrap_or(h))
        .with_highlight(req.highlight.clone());
    spec.domain = req.domain.map(|[min, max]| (min, max));
    let svg = render(&spec)?;
    Ok(([(header::CONTENT_TYPE, "image/svg+xml")], svg).into_response())
}

#[derive(Deserialize)]
struct DecomposeRequest {
    value: f64,
    precision: Option<u32>,
}

async fn decompose(body: Bytes) -> ApiResult<Json<Value>> {
    let req: DecomposeRequest = parse_body(&body)?;
    let precision = req.precision.unwrap_or(omv::DEFAULT_PRECISION);
    let o = omv::decompose(req.value, precision).map_err(|e| ApiError::bad_request("invalid_value", e.to_string()))?;
    Ok(Json(json!({"mantissa": o.mantissa(), "exponent": o.exponent()})))
}
