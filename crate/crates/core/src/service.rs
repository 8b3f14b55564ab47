//! Single-session state and the local HTTP service.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use tokio::sync::RwLock;

use crate::error::{Error, Result};
use crate::plabic::{Family, GraphJson, PlabicGraph};
use crate::polytope::{superpotential_polytope, vertices_json};
use crate::quiver::Quiver;
use crate::seeds::{assemble_superpotential, default_budget, superpotential_terms};
use crate::subsets::{check_kn, DihedralElement, KSubset};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct DihedralSpec {
    #[serde(default)]
    pub shift: i64,
    #[serde(default)]
    pub reflected: bool,
}

impl DihedralSpec {
    pub fn element(self, n: usize) -> DihedralElement {
        if self.reflected {
            DihedralElement::reflection(n, self.shift)
        } else {
            DihedralElement::rotation(n, self.shift)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResetRequest {
    pub family: Family,
    pub k: usize,
    pub n: usize,
    #[serde(default)]
    pub dihedral: DihedralSpec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HistoryEntry {
    pub label: KSubset,
    pub new_label: KSubset,
}

/// The current graph, where it came from, and the mutations applied since.
#[derive(Clone, Debug, PartialEq)]
pub struct Session {
    origin: ResetRequest,
    history: Vec<HistoryEntry>,
    graph: PlabicGraph,
}

#[derive(Serialize, Deserialize)]
struct HistoryJson {
    label: Vec<usize>,
    new_label: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct SessionJson {
    origin: ResetRequest,
    history: Vec<HistoryJson>,
    graph: GraphJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceView {
    pub label: KSubset,
    pub right_label: KSubset,
    pub frozen: bool,
    pub mutable: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GraphView {
    pub origin: ResetRequest,
    pub history_length: usize,
    pub graph: GraphJson,
    pub faces: Vec<FaceView>,
}

impl Session {
    pub fn new(origin: ResetRequest) -> Result<Self> {
        check_kn(origin.k, origin.n)?;
        let graph = Session::seed_graph(&origin)?;
        Ok(Session {
            origin,
            history: Vec::new(),
            graph,
        })
    }

    fn seed_graph(origin: &ResetRequest) -> Result<PlabicGraph> {
        Ok(origin
            .family
            .build(origin.k, origin.n)?
            .dihedral_act(&origin.dihedral.element(origin.n)))
    }

    pub fn origin(&self) -> &ResetRequest {
        &self.origin
    }

    pub fn history(&self) -> &[HistoryEntry] {
        &self.history
    }

    pub fn graph(&self) -> &PlabicGraph {
        &self.graph
    }

    /// Mutates at the left label `label`; returns the label that replaced it.
    pub fn mutate(&mut self, label: &KSubset) -> Result<KSubset> {
        let (g, new) = self.graph.mutate(label)?;
        self.graph = g;
        self.history.push(HistoryEntry {
            label: *label,
            new_label: new,
        });
        Ok(new)
    }

    /// Rebuilds the graph from the origin by replaying the history.
    pub fn replay(&self) -> Result<PlabicGraph> {
        let mut g = Session::seed_graph(&self.origin)?;
        for h in &self.history {
            let (next, new) = g.mutate(&h.label)?;
            if new != h.new_label {
                return Err(Error::Mismatch(format!(
                    "replaying {} gave {new}, recorded {}",
                    h.label, h.new_label
                )));
            }
            g = next;
        }
        Ok(g)
    }

    pub fn view(&self) -> Result<GraphView> {
        let g = &self.graph;
        let quiver = Quiver::from_graph(g)?;
        let mutable: std::collections::BTreeSet<KSubset> = g.mutable_labels()?.into_iter().collect();
        let faces = quiver
            .vertices()
            .iter()
            .map(|(l, &frozen)| FaceView {
                label: *l,
                right_label: l.complement(),
                frozen,
                mutable: mutable.contains(l),
            })
            .collect();
        Ok(GraphView {
            origin: self.origin.clone(),
            history_length: self.history.len(),
            graph: graph_json_with_labels(g)?,
            faces,
        })
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(SessionJson {
            origin: self.origin.clone(),
            history: self
                .history
                .iter()
                .map(|h| HistoryJson {
                    label: h.label.elements(),
                    new_label: h.new_label.elements(),
                })
                .collect(),
            graph: self.graph.to_json(),
        })
        .expect("session serializes")
    }

    /// Parses a session document and checks that its history replays to its graph.
    pub fn from_json(v: Value) -> Result<Self> {
        let j: SessionJson = serde_json::from_value(v)?;
        let n = j.origin.n;
        let history = j
            .history
            .into_iter()
            .map(|h| {
                Ok(HistoryEntry {
                    label: KSubset::new(n, h.label)?,
                    new_label: KSubset::new(n, h.new_label)?,
                })
            })
            .collect::<Result<_>>()?;
        let s = Session {
            origin: j.origin,
            history,
            graph: PlabicGraph::from_json(&j.graph)?,
        };
        if s.replay()? != s.graph {
            return Err(Error::Mismatch("session history does not reproduce the stored graph".into()));
        }
        Ok(s)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Session::from_json(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("tmp");
        std::fs::write(&tmp, serde_json::to_string_pretty(&self.to_json())?)?;
        std::fs::rename(tmp, path)?;
        Ok(())
    }
}

/// Graph JSON with the left face labels filled in.
pub fn graph_json_with_labels(g: &PlabicGraph) -> Result<GraphJson> {
    let mut j = g.to_json();
    j.labels = Some(g.labels()?.labels().iter().map(KSubset::elements).collect());
    Ok(j)
}

struct AppState {
    session: RwLock<Session>,
    path: Option<PathBuf>,
    budget: usize,
}

type Shared = Arc<AppState>;

struct ApiError(StatusCode, String);

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.0, Json(json!({ "error": self.1 }))).into_response()
    }
}

fn internal(e: Error) -> ApiError {
    let status = match e {
        Error::Budget(_) => StatusCode::SERVICE_UNAVAILABLE,
        _ => StatusCode::INTERNAL_SERVER_ERROR,
    };
    ApiError(status, e.to_string())
}

type ApiResult = std::result::Result<Json<Value>, ApiError>;

fn to_value<T: Serialize>(t: &T) -> std::result::Result<Value, ApiError> {
    serde_json::to_value(t).map_err(|e| ApiError(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))
}

impl AppState {
    async fn snapshot(&self) -> Session {
        self.session.read().await.clone()
    }

    fn persist(&self, s: &Session) -> std::result::Result<(), ApiError> {
        match &self.path {
            Some(p) => s.save(p).map_err(internal),
            None => Ok(()),
        }
    }
}

async fn get_graph(State(st): State<Shared>) -> ApiResult {
    let s = st.snapshot().await;
    Ok(Json(to_value(&s.view().map_err(internal)?)?))
}

fn parse_label(body: &[u8], n: usize, k: usize) -> std::result::Result<KSubset, ApiError> {
    let bad = |m: String| ApiError(StatusCode::BAD_REQUEST, m);
    let v: Value = serde_json::from_slice(body).map_err(|e| bad(format!("body is not JSON: {e}")))?;
    let raw = v.get("label").ok_or_else(|| bad("missing field \"label\"".into()))?;
    let elems: Vec<usize> =
        serde_json::from_value(raw.clone()).map_err(|_| bad(format!("label must be an integer array, got {raw}")))?;
    let label = KSubset::new(n, elems).map_err(|e| bad(e.to_string()))?;
    if label.len() != k {
        return Err(bad(format!("label {label} does not have {k} elements")));
    }
    Ok(label)
}

async fn post_mutate(State(st): State<Shared>, body: Bytes) -> ApiResult {
    let mut guard = st.session.write().await;
    let (n, k) = (guard.origin.n, guard.origin.k);
    let label = parse_label(&body, n, k)?;
    let mut next = guard.clone();
    let new = next.mutate(&label).map_err(|e| match e {
        Error::Frozen(_) | Error::NotMutable(..) | Error::LabelAbsent(_) => ApiError(StatusCode::CONFLICT, e.to_string()),
        other => internal(other),
    })?;
    let view = next.view().map_err(internal)?;
    st.persist(&next)?;
    *guard = next;
    Ok(Json(json!({ "label": label, "new_label": new, "graph": to_value(&view)? })))
}

async fn post_reset(State(st): State<Shared>, body: Bytes) -> ApiResult {
    let req: ResetRequest = serde_json::from_slice(&body)
        .map_err(|e| ApiError(StatusCode::UNPROCESSABLE_ENTITY, format!("invalid reset request: {e}")))?;
    let session = Session::new(req).map_err(|e| ApiError(StatusCode::UNPROCESSABLE_ENTITY, e.to_string()))?;
    let view = session.view().map_err(internal)?;
    let mut guard = st.session.write().await;
    st.persist(&session)?;
    *guard = session;
    Ok(Json(to_value(&view)?))
}

async fn get_orbit(State(st): State<Shared>) -> ApiResult {
    let s = st.snapshot().await;
    let orbit = s.graph.orbit().map_err(internal)?;
    Ok(Json(json!({ "size": orbit.len(), "members": to_value(&orbit)? })))
}

async fn get_superpotential(State(st): State<Shared>) -> ApiResult {
    let s = st.snapshot().await;
    let budget = st.budget;
    let out = tokio::task::spawn_blocking(move || -> Result<Value> {
        let terms = superpotential_terms(&s.graph, budget)?;
        let w = assemble_superpotential(&terms, s.graph.k());
        Ok(json!({
            "terms": terms.iter().map(|t| t.to_json()).collect::<Vec<_>>(),
            "w": w.to_json(),
            "text": w.to_string(),
        }))
    })
    .await
    .map_err(|e| ApiError(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))?
    .map_err(internal)?;
    Ok(Json(out))
}

async fn get_polytope(State(st): State<Shared>, Query(q): Query<BTreeMap<String, String>>) -> ApiResult {
    let r = match q.get("r") {
        None => BigRational::from_integer(1.into()),
        Some(t) => parse_rational(t).map_err(|e| ApiError(StatusCode::BAD_REQUEST, e.to_string()))?,
    };
    let s = st.snapshot().await;
    let budget = st.budget;
    let out = tokio::task::spawn_blocking(move || -> Result<Value> {
        let p = superpotential_polytope(&s.graph, &r, budget)?;
        let verts = p.vertices()?;
        let lattice = p.lattice_count()?;
        Ok(json!({
            "r": r.to_string(),
            "polytope": serde_json::to_value(p.to_json()?)?,
            "vertices": vertices_json(&verts),
            "lattice_points": lattice,
        }))
    })
    .await
    .map_err(|e| ApiError(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))?
    .map_err(|e| match e {
        Error::Unbounded => ApiError(StatusCode::UNPROCESSABLE_ENTITY, e.to_string()),
        other => internal(other),
    })?;
    Ok(Json(out))
}

async fn get_history(State(st): State<Shared>) -> ApiResult {
    let s = st.snapshot().await;
    Ok(Json(
        json!({ "origin": to_value(&s.origin)?, "history": to_value(&s.history)? }),
    ))
}

/// Parses `"a"` or `"a/b"`.
pub fn parse_rational(t: &str) -> Result<BigRational> {
    t.trim()
        .parse::<BigRational>()
        .map_err(|_| Error::Parse(format!("not a rational number: {t:?}")))
}

/// The HTTP routes over a session, persisted to `path` after every change if given.
pub fn router(session: Session, path: Option<PathBuf>, budget: usize) -> Router {
    let state = Arc::new(AppState {
        session: RwLock::new(session),
        path,
        budget,
    });
    Router::new()
        .route("/graph", get(get_graph))
        .route("/mutate", post(post_mutate))
        .route("/reset", post(post_reset))
        .route("/orbit", get(get_orbit))
        .route("/superpotential", get(get_superpotential))
        .route("/polytope", get(get_polytope))
        .route("/history", get(get_history))
        .with_state(state)
}

/// Loads the session at `path` (or starts `G^ch_{3,6}` there) and serves until the listener closes.
pub async fn serve(listener: tokio::net::TcpListener, path: Option<PathBuf>) -> Result<()> {
    let session = match &path {
        Some(p) if p.exists() => Session::load(p)?,
        _ => {
            let s = Session::new(ResetRequest {
                family: Family::Ch,
                k: 3,
                n: 6,
                dihedral: DihedralSpec::default(),
            })?;
            if let Some(p) = &path {
                s.save(p)?;
            }
            s
        }
    };
    axum::serve(listener, router(session, path, default_budget())).await?;
    Ok(())
}
