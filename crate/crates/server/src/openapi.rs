//! Description document served at `/spec`. Kept in step with
//! `routes::ROUTES` by a contract test.

use serde_json::{json, Value};

fn error_ref() -> Value {
    json!({ "content": { "application/json": { "schema": { "$ref": "#/components/schemas/ApiError" } } } })
}

fn ok(description: &str, schema: &str) -> Value {
    json!({
        "description": description,
        "content": { "application/json": { "schema": { "$ref": format!("#/components/schemas/{schema}") } } }
    })
}

fn path_param(name: &str, description: &str) -> Value {
    json!({ "name": name, "in": "path", "required": true, "schema": { "type": "string" }, "description": description })
}

fn query_param(name: &str, description: &str) -> Value {
    json!({ "name": name, "in": "query", "required": false, "schema": { "type": "string" }, "description": description })
}

pub fn document() -> Value {
    let id = path_param("id", "session id");
    let target = path_param("target", "protein id or symbol");
    let err = |desc: &str| {
        let mut v = error_ref();
        v["description"] = json!(desc);
        v
    };
    json!({
        "openapi": "3.0.3",
        "info": {
            "title": "happier",
            "version": env!("CARGO_PKG_VERSION"),
            "description": "Explore a protein's interaction neighborhood subgraph by subgraph, with interaction-strength, therapeutic-impact and docking layers."
        },
        "paths": {
            "/sessions": {
                "post": {
                    "summary": "Create a session from a center symbol, PDB text, impact text and SDF text (JSON or multipart).",
                    "requestBody": { "required": true, "content": {
                        "application/json": { "schema": { "$ref": "#/components/schemas/NewSession" } },
                        "multipart/form-data": { "schema": { "$ref": "#/components/schemas/NewSession" } }
                    }},
                    "responses": { "201": ok("session created", "Created"), "400": err("invalid input") }
                }
            },
            "/sessions/{id}": {
                "get": {
                    "summary": "Session inputs, subgraph count and bookmarks.",
                    "parameters": [id],
                    "responses": { "200": ok("session summary", "SessionSummary"), "404": err("unknown session") }
                }
            },
            "/sessions/{id}/subgraphs/{n}": {
                "get": {
                    "summary": "One subgraph with the requested criteria layers.",
                    "parameters": [
                        id,
                        path_param("n", "1-based subgraph index"),
                        query_param("layers", "comma-separated subset of c1,c2,c3 (c1 is always included)"),
                        query_param("refresh", "true to drop cached provider results first")
                    ],
                    "responses": {
                        "200": ok("annotated subgraph; provider failures appear in layer_status", "SubgraphView"),
                        "400": err("bad layer list"),
                        "404": err("unknown session or subgraph index")
                    }
                }
            },
            "/sessions/{id}/ppi/{target}": {
                "get": {
                    "summary": "Detail of the center–target interaction: assessment, docking poses, bookmark state.",
                    "parameters": [id, target],
                    "responses": { "200": ok("PPI detail", "PpiDetail"), "404": err("unknown session or target") }
                }
            },
            "/sessions/{id}/bookmarks": {
                "get": {
                    "summary": "Bookmarked PPIs as a graph around the center.",
                    "parameters": [id, query_param("subgraphs", "comma-separated subgraph indices to keep")],
                    "responses": { "200": ok("bookmark view", "BookmarksView"), "400": err("bad filter"), "404": err("unknown session") }
                }
            },
            "/sessions/{id}/bookmarks/{target}": {
                "put": {
                    "summary": "Bookmark a target (idempotent).",
                    "parameters": [id, target],
                    "responses": { "200": ok("bookmark state", "BookmarkChange"), "404": err("unknown session or target") }
                },
                "delete": {
                    "summary": "Remove a bookmark (idempotent).",
                    "parameters": [id, target],
                    "responses": { "200": ok("bookmark state", "BookmarkChange"), "404": err("unknown session or target") }
                }
            },
            "/sessions/{id}/events": {
                "get": {
                    "summary": "The session's event log.",
                    "parameters": [id],
                    "responses": { "200": { "description": "events in seq order", "content": { "application/json": { "schema": { "type": "array", "items": { "$ref": "#/components/schemas/SessionEvent" } } } } }, "404": err("unknown session") }
                },
                "post": {
                    "summary": "Append a user action; seq and ts are assigned by the server.",
                    "parameters": [id],
                    "requestBody": { "required": true, "content": { "application/json": { "schema": { "$ref": "#/components/schemas/EventBody" } } } },
                    "responses": { "201": ok("logged event", "SessionEvent"), "400": err("invalid event"), "404": err("unknown session or target") }
                }
            },
            "/analysis/linkograph": {
                "post": {
                    "summary": "Linkograph analysis of explicit moves or of a session's event log.",
                    "requestBody": { "required": true, "content": { "application/json": { "schema": { "$ref": "#/components/schemas/LinkographyRequest" } } } },
                    "responses": { "200": ok("analysis report", "LinkographyReport"), "400": err("no moves or bad parameters"), "404": err("unknown session"), "502": err("embedding provider unavailable") }
                }
            },
            "/spec": {
                "get": {
                    "summary": "This document.",
                    "responses": { "200": { "description": "OpenAPI document" } }
                }
            }
        },
        "components": { "schemas": schemas() }
    })
}

fn schemas() -> Value {
    let s = |t: &str| json!({ "type": t });
    let status = json!({
        "type": "object",
        "properties": { "status": { "type": "string", "enum": ["ready", "pending", "failed"] }, "reason": s("string") },
        "required": ["status"]
    });
    json!({
        "ApiError": {
            "type": "object",
            "properties": {
                "code": { "type": "string", "enum": ["NotFound", "InvalidInput", "ProviderUnavailable", "Conflict", "Internal"] },
                "message": s("string"),
                "detail": s("object")
            },
            "required": ["code", "message"]
        },
        "NewSession": {
            "type": "object",
            "properties": { "center_symbol": s("string"), "pdb": s("string"), "impact_text": s("string"), "sdf": s("string") },
            "required": ["center_symbol", "pdb", "impact_text", "sdf"]
        },
        "Created": { "type": "object", "properties": { "session_id": s("string") }, "required": ["session_id"] },
        "ProteinRef": { "type": "object", "properties": { "id": s("string"), "symbol": s("string") }, "required": ["id", "symbol"] },
        "SessionSummary": {
            "type": "object",
            "properties": {
                "session_id": s("string"), "created_at": s("string"),
                "center": { "$ref": "#/components/schemas/ProteinRef" },
                "impact_text": s("string"), "protein": s("object"), "ligand": s("object"),
                "neighbor_count": s("integer"), "subgraph_count": s("integer"),
                "bookmarks": { "type": "array", "items": s("string") }, "event_count": s("integer")
            }
        },
        "LayerStatus": status,
        "NodeView": {
            "type": "object",
            "properties": {
                "id": s("string"), "symbol": s("string"),
                "role": { "type": "string", "enum": ["center", "member"] },
                "subgraph": s("integer"), "affinity": s("number"),
                "node_color": { "type": "string", "enum": ["pink", "orange", "purple"] }
            },
            "required": ["id", "symbol", "role"]
        },
        "EdgeView": {
            "type": "object",
            "properties": {
                "source": s("string"), "target": s("string"), "source_symbol": s("string"), "target_symbol": s("string"),
                "combined_score": s("integer"),
                "thickness_tier": { "type": "string", "enum": ["thin", "medium", "thick"] },
                "pathway_score": s("number"),
                "edge_color": { "type": "string", "enum": ["gray", "red"] }
            },
            "required": ["source", "target", "combined_score", "thickness_tier"]
        },
        "SubgraphView": {
            "type": "object",
            "properties": {
                "session_id": s("string"), "index": s("integer"), "subgraph_count": s("integer"),
                "center": { "$ref": "#/components/schemas/ProteinRef" },
                "layers": { "type": "array", "items": { "type": "string", "enum": ["c1", "c2", "c3"] } },
                "layer_status": { "type": "object", "additionalProperties": { "$ref": "#/components/schemas/LayerStatus" } },
                "nodes": { "type": "array", "items": { "$ref": "#/components/schemas/NodeView" } },
                "edges": { "type": "array", "items": { "$ref": "#/components/schemas/EdgeView" } },
                "warnings": { "type": "array", "items": s("string") }
            }
        },
        "PpiDetail": {
            "type": "object",
            "properties": {
                "center": { "$ref": "#/components/schemas/ProteinRef" },
                "target": { "$ref": "#/components/schemas/ProteinRef" },
                "subgraph": s("integer"), "combined_score": s("integer"), "thickness_tier": s("string"),
                "impact_status": s("string"), "assessment": s("object"), "edge_color": s("string"),
                "docking_status": { "type": "string", "enum": ["ready", "pending", "failed"] },
                "docking": s("object"), "node_color": s("string"), "bookmarked": s("boolean")
            }
        },
        "BookmarksView": {
            "type": "object",
            "properties": {
                "filter": { "type": "array", "items": s("integer") }, "count": s("integer"),
                "bookmarks": { "type": "array", "items": s("string") },
                "nodes": { "type": "array", "items": { "$ref": "#/components/schemas/NodeView" } },
                "edges": { "type": "array", "items": { "$ref": "#/components/schemas/EdgeView" } }
            }
        },
        "BookmarkChange": {
            "type": "object",
            "properties": { "target": { "$ref": "#/components/schemas/ProteinRef" }, "bookmarked": s("boolean"), "changed": s("boolean") }
        },
        "EventBody": {
            "type": "object",
            "properties": {
                "kind": { "type": "string", "enum": ["ViewSubgraph", "ToggleLayer", "OpenDetail", "Bookmark", "Unbookmark", "Note"] },
                "payload": s("object"),
                "text": s("string")
            },
            "required": ["kind", "payload"]
        },
        "SessionEvent": {
            "type": "object",
            "properties": { "v": s("integer"), "seq": s("integer"), "kind": s("string"), "payload": s("object"), "text": s("string"), "ts": s("string") }
        },
        "LinkographyRequest": {
            "type": "object",
            "properties": {
                "moves": { "type": "array", "items": s("string") },
                "session_id": s("string"),
                "threshold": s("number"), "k_fraction": s("number"),
                "submitted_ppis": { "type": "array", "items": s("string") },
                "center_symbol": s("string"),
                "confidence": { "type": "object", "additionalProperties": s("number") },
                "require_center": s("boolean")
            }
        },
        "LinkographyReport": {
            "type": "object",
            "properties": {
                "embedding": s("string"), "threshold": s("number"), "k_fraction": s("number"), "k": s("integer"),
                "moves": { "type": "array", "items": s("object") },
                "links": { "type": "array", "items": { "type": "array" } },
                "divergent": { "type": "array", "items": s("integer") },
                "convergent": { "type": "array", "items": s("integer") },
                "labels": { "type": "object", "additionalProperties": { "type": "string", "enum": ["BothDC", "EitherDC", "NeitherDC"] } },
                "summary": { "type": "array", "items": s("object") }
            }
        }
    })
}
