use serde::{Deserialize, Serialize};

use super::{Graph, GraphError};

/// JSON edge-list form `{"n": 4, "edges": [[0, 1], [1, 2]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeList {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&Graph> for EdgeList {
    fn from(g: &Graph) -> Self {
        EdgeList {
            n: g.n(),
            edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        }
    }
}

impl TryFrom<&EdgeList> for Graph {
    type Error = GraphError;

    fn try_from(e: &EdgeList) -> Result<Self, Self::Error> {
        Graph::from_edges(e.n, e.edges.iter().map(|&[u, v]| (u, v)))
    }
}

impl EdgeList {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("edge lists always serialize")
    }

    pub fn parse(text: &str) -> Result<Graph, GraphError> {
        let e: EdgeList =
            serde_json::from_str(text).map_err(|e| GraphError::EdgeList(e.to_string()))?;
        Graph::try_from(&e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::petersen;

    #[test]
    fn json_round_trip() {
        let g = petersen();
        let text = EdgeList::from(&g).to_json();
        assert_eq!(EdgeList::parse(&text).unwrap(), g);
    }

    #[test]
    fn json_errors() {
        assert!(EdgeList::parse(r#"{"n": 2, "edges": [[0, 2]]}"#).is_err());
        assert!(EdgeList::parse(r#"{"n": 2, "edges": [[1, 1]]}"#).is_err());
        assert!(EdgeList::parse("[]").is_err());
    }
}
