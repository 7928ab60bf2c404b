# src/orchestrator/check_graph.py
from collections import defaultdict, deque
from typing import Any, Callable, Dict, List, Optional, Set
import traceback


class CheckNode:
    """One verification check; fn(ctx) returns a result stored under the node name"""

    def __init__(self, name: str, fn: Callable[[Dict[str, Any]], Any]):
        self.name = name
        self.fn = fn
        self.result = None
        self.status = "PENDING"
        self.error: Optional[str] = None
        self.trace: Optional[str] = None

    def run(self, ctx: Dict[str, Any]):
        self.status = "RUNNING"
        try:
            res = self.fn(ctx)
            ctx[self.name] = res
            self.result = res
            self.status = "SUCCESS"
            return res
        except Exception as e:
            self.status = "FAILED"
            self.error = f"{type(e).__name__}: {e}"
            self.trace = traceback.format_exc()
            raise


class CheckGraph:
    """
    Dependency graph of checks. A node runs after all its upstream nodes; when
    one of them did not succeed it is SKIPPED. A node may also report failure
    without raising through `failed(result)`.
    """

    def __init__(self, failed: Optional[Callable[[Any], bool]] = None):
        self.nodes: Dict[str, CheckNode] = {}
        self.edges: Dict[str, Set[str]] = defaultdict(set)  # u -> {v}: u runs before v
        self.rev_edges: Dict[str, Set[str]] = defaultdict(set)
        self.order_added: List[str] = []
        self.failed = failed or (lambda result: False)

    def add_node(self, name: str, fn: Callable[[Dict[str, Any]], Any]):
        if name in self.nodes:
            raise ValueError("Node exists: " + name)
        self.nodes[name] = CheckNode(name, fn)
        self.order_added.append(name)

    def add_edge(self, from_node: str, to_node: str):
        if from_node not in self.nodes or to_node not in self.nodes:
            raise KeyError(f"Missing node in edge {from_node} -> {to_node}")
        self.edges[from_node].add(to_node)
        self.rev_edges[to_node].add(from_node)

    def upstream(self, name: str) -> List[str]:
        return sorted(self.rev_edges.get(name, ()))

    def toposort(self) -> List[str]:
        """Kahn's algorithm; ties broken by insertion order so runs are reproducible"""
        rank = {n: i for i, n in enumerate(self.order_added)}
        indeg = {n: len(self.rev_edges.get(n, ())) for n in self.nodes}
        q = deque(sorted((n for n, d in indeg.items() if d == 0), key=rank.get))
        order = []
        while q:
            u = q.popleft()
            order.append(u)
            for v in sorted(self.edges.get(u, ()), key=rank.get):
                indeg[v] -= 1
                if indeg[v] == 0:
                    q.append(v)
        if len(order) != len(self.nodes):
            raise RuntimeError("Cycle detected in check graph")
        return order

    def run(
        self,
        initial_ctx: Optional[Dict[str, Any]] = None,
        on_node_done: Optional[Callable[[CheckNode], None]] = None,
    ) -> Dict[str, Any]:
        ctx = initial_ctx if initial_ctx is not None else {}
        for name in self.toposort():
            node = self.nodes[name]
            blocked = [u for u in self.upstream(name) if self.nodes[u].status != "SUCCESS"]
            if blocked:
                node.status = "SKIPPED"
                node.error = f"upstream check(s) did not pass: {', '.join(blocked)}"
            else:
                try:
                    node.run(ctx)
                    if self.failed(node.result):
                        node.status = "FAILED"
                except Exception:
                    pass  # recorded on the node
            if on_node_done:
                on_node_done(node)
        return ctx
