#include <algorithm>
#include <cmath>
#include <string>

#include "vfk/mincut.hpp"

namespace vfk {

void PushRelabel::activate(int v) {
  if (v == source_ || v == sink_ || active_[v] || excess_[v] <= flowEps_) return;
  active_[v] = 1;
  queue_.push_back(v);
}

void PushRelabel::push(int from, int to) {
  double& forward = residual(from, to);
  const double delta = std::min(excess_[from], forward);
  forward -= delta;
  residual(to, from) += delta;
  excess_[from] -= delta;
  excess_[to] += delta;
  activate(to);
}

// Exact distance labels: to the sink where reachable, otherwise V + distance
// to the source. Vertices reaching neither are parked at 2V.
void PushRelabel::globalRelabel() {
  const int V = vertices_;
  std::fill(height_.begin(), height_.end(), 2 * V);
  std::vector<int> frontier;
  frontier.reserve(V);

  auto bfs = [&](int root, int base) {
    height_[root] = base;
    frontier.assign(1, root);
    for (std::size_t head = 0; head < frontier.size(); ++head) {
      const int v = frontier[head];
      for (int u = 0; u < V; ++u) {
        if (height_[u] == 2 * V && u != source_ && u != sink_ && residual(u, v) > flowEps_) {
          height_[u] = height_[v] + 1;
          frontier.push_back(u);
        }
      }
    }
  };
  bfs(sink_, 0);
  bfs(source_, V);

  std::fill(heightCount_.begin(), heightCount_.end(), 0);
  for (int v = 0; v < V; ++v) ++heightCount_[height_[v]];
  std::fill(currentArc_.begin(), currentArc_.end(), 0);
  relabelsSinceGlobal_ = 0;
}

void PushRelabel::gap(int emptied) {
  const int V = vertices_;
  for (int u = 0; u < V; ++u) {
    if (u == source_) continue;
    if (height_[u] > emptied && height_[u] < V) {
      --heightCount_[height_[u]];
      height_[u] = V + 1;
      ++heightCount_[V + 1];
      currentArc_[u] = 0;
    }
  }
}

void PushRelabel::relabel(int v) {
  const int V = vertices_;
  const int old = height_[v];
  int lowest = 2 * V - 1;
  for (int w = 0; w < V; ++w) {
    if (residual(v, w) > flowEps_) lowest = std::min(lowest, height_[w]);
  }
  --heightCount_[old];
  height_[v] = std::min(lowest + 1, 2 * V);
  ++heightCount_[height_[v]];
  currentArc_[v] = 0;
  ++relabelsSinceGlobal_;
  if (heightCount_[old] == 0 && old < V) gap(old);
}

void PushRelabel::discharge(int v) {
  const int V = vertices_;
  while (excess_[v] > flowEps_) {
    if (currentArc_[v] == V) {
      relabel(v);
      if (height_[v] >= 2 * V) break;  // stranded rounding dust
      continue;
    }
    const int w = currentArc_[v];
    if (residual(v, w) > flowEps_ && height_[v] == height_[w] + 1) {
      push(v, w);
    } else {
      ++currentArc_[v];
    }
  }
}

CutResult PushRelabel::solve(const FlowNetwork& net) {
  const int V = net.vertexCount();
  const auto& w = net.weights();
  if (V < 2) {
    throw LatticeError(ErrorKind::InvalidForm, "flow network needs a source and a sink");
  }
  if (!w.allFinite() || w.minCoeff() < 0.0) {
    throw LatticeError(ErrorKind::InvalidForm, "capacities must be finite and nonnegative");
  }
  vertices_ = V;
  source_ = net.source();
  sink_ = net.sink();
  const double maxCap = w.maxCoeff();
  flowEps_ = 1e-14 * maxCap;

  residual_.resize(static_cast<std::size_t>(V) * V);
  for (int i = 0; i < V; ++i) {
    for (int j = 0; j < V; ++j) residual(i, j) = (i == j) ? 0.0 : w(i, j);
  }
  excess_.assign(V, 0.0);
  height_.assign(V, 0);
  currentArc_.assign(V, 0);
  heightCount_.assign(2 * V + 1, 0);
  active_.assign(V, 0);
  queue_.clear();

  double sourceCapacity = 0.0;
  for (int v = 0; v < V; ++v) {
    const double c = residual(source_, v);
    if (c <= 0.0) continue;
    sourceCapacity += c;
    residual(source_, v) = 0.0;
    residual(v, source_) += c;
    excess_[v] += c;
    excess_[source_] -= c;
  }
  globalRelabel();
  for (int v = 0; v < V; ++v) activate(v);

  while (!queue_.empty()) {
    const int v = queue_.front();
    queue_.pop_front();
    active_[v] = 0;
    discharge(v);
    if (relabelsSinceGlobal_ >= V) globalRelabel();
  }

  double stranded = 0.0;
  for (int v = 0; v < V; ++v) {
    if (v != source_ && v != sink_) stranded += std::max(0.0, excess_[v]);
  }
  if (stranded > 1e-7 * std::max(sourceCapacity, maxCap)) {
    throw LatticeError(ErrorKind::InternalError,
                       "push-relabel left excess " + std::to_string(stranded) + " in the network");
  }

  std::vector<bool> reached(V, false);
  std::vector<int> frontier{source_};
  reached[source_] = true;
  for (std::size_t head = 0; head < frontier.size(); ++head) {
    const int v = frontier[head];
    for (int u = 0; u < V; ++u) {
      if (!reached[u] && residual(v, u) > flowEps_) {
        reached[u] = true;
        frontier.push_back(u);
      }
    }
  }
  if (reached[sink_]) {
    throw LatticeError(ErrorKind::InternalError, "sink reachable in the residual network after max flow");
  }

  CutResult out;
  out.indicator = Eigen::VectorXi::Zero(V - 2);
  for (int v = 0; v < V; ++v) {
    if (!reached[v]) continue;
    out.sourceSide.push_back(v);
    if (v != source_) out.indicator(v - 1) = 1;
  }
  out.weight = cutWeight(net, reached);
  out.flowValue = excess_[sink_];
  return out;
}

}  // namespace vfk
