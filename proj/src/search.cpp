#include "strap/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

namespace strap {

Searcher::Searcher(const Instance& inst, const CostModel& cm, const SearchConfig& cfg)
    : inst_(inst),
      cm_(cm),
      cfg_(cfg),
      samples_per_object_(cfg.samples_per_object > 0 ? cfg.samples_per_object
                                                     : inst.object_count()),
      best_cost_(std::numeric_limits<double>::infinity()),
      rng_(cfg.rng_seed),
      start_(std::chrono::steady_clock::now()) {
  validate_instance(inst_);
  SearchNode root;
  root.state = State{inst_.robot_start, inst_.start};
  root.g = 0.0;
  root.h = h_cost(root.state, inst_, cm_).total();
  root_ = try_enqueue(std::move(root));
}

double Searcher::elapsed() const {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
}

bool Searcher::below_prune_threshold(double f) const {
  // Queue entries with f >= best - epsilon are filtered once a plan exists.
  return !best_ || f < best_cost_ - cfg_.prune_epsilon;
}

SearchNode* Searcher::try_enqueue(SearchNode&& cand) {
  if (!below_prune_threshold(cand.f())) return nullptr;
  StateKey key = state_key(cand.state);
  if (auto it = closed_.find(key); it != closed_.end() && it->second <= cand.g) return nullptr;
  const double f = cand.f();
  auto [it, inserted] = open_index_.try_emplace(key, nullptr, f);
  if (!inserted && it->second.second <= f) return nullptr;  // keep the lower-f duplicate

  cand.seq = next_seq_++;
  arena_.push_back(std::move(cand));
  SearchNode* node = &arena_.back();
  ++stats_.nodes_created;
  it->second = {node, f};
  heap_.push({f, node->h, node->seq, node});
  stats_.queue_peak = std::max(stats_.queue_peak, open_index_.size());
  return node;
}

std::vector<Action> Searcher::reconstruct_path(const SearchNode* node) {
  std::vector<Action> actions;
  for (const SearchNode* cur = node; cur && cur->incoming; cur = cur->parent) {
    actions.push_back(*cur->incoming);
  }
  std::reverse(actions.begin(), actions.end());
  return actions;
}

std::optional<Pose> Searcher::sample_buffer(ObjectId k, const SearchNode* node) {
  const double r = inst_.radius(k);
  const Workspace& w = inst_.workspace;
  if (w.width < 2.0 * r || w.height < 2.0 * r) return std::nullopt;
  const Pose current = node->state.arrangement.of(k);

  // Last ancestor whose incoming action placed k; its arrangement is the one
  // k's current buffer was sampled against.
  const SearchNode* placed_at = nullptr;
  for (const SearchNode* cur = node; cur && cur->incoming; cur = cur->parent) {
    if (cur->incoming->object == k) { placed_at = cur; break; }
  }

  for (int t = 0; t < cfg_.buffer_retry_budget; ++t) {
    Pose p{rng_.uniform(r, w.width - r), rng_.uniform(r, w.height - r)};
    if (!placement_free(p, r, node->state.arrangement, inst_, k)) continue;
    if (pose_close(p, current, kPickTol)) continue;
    if (placed_at) {
      // k already sits in a buffer: only accept locations where it could NOT
      // have been placed at the time it entered that buffer, i.e. poses that
      // collide with some other object of the ancestor arrangement.
      const Arrangement& ancestor = placed_at->state.arrangement;
      bool collides_then = false;
      const int n = inst_.object_count();
      for (ObjectId j = 1; j <= n; ++j) {
        if (j == k) continue;
        if (disks_collide(p, r, ancestor.of(j), inst_.radius(j))) { collides_then = true; break; }
      }
      if (!collides_then) continue;
    }
    return p;
  }
  return std::nullopt;
}

std::vector<SearchNode*> Searcher::expand(const SearchNode* node) {
  std::vector<SearchNode*> children;
  const std::vector<ObjectId> misplaced = misplaced_objects(node->state, inst_);
  for (ObjectId k : misplaced) {
    if (k == node->moved_object()) continue;  // no immediate re-move

    const Pose pick = node->state.arrangement.of(k);
    const Pose goal = inst_.goal.of(k);
    const double pick_to_goal = travel_cost(pick, goal, cm_.embodiment, inst_.workspace);

    auto make_child = [&](const Pose& place, bool to_goal) {
      const double g = node->g + cm_.mc +
                       travel_cost(node->state.robot, pick, cm_.embodiment, inst_.workspace) +
                       travel_cost(pick, place, cm_.embodiment, inst_.workspace);
      // Incremental h bound: enough to drop doomed successors without
      // materializing their states.
      const double h_est =
          to_goal ? node->h - cm_.mc - pick_to_goal
                  : node->h - pick_to_goal +
                        travel_cost(place, goal, cm_.embodiment, inst_.workspace);
      if (!below_prune_threshold(g + h_est)) return;

      SearchNode cand;
      cand.state = node->state;
      cand.state.arrangement.of(k) = place;
      cand.state.robot = place;
      cand.g = g;
      cand.h = h_cost(cand.state, inst_, cm_).total();
      cand.parent = node;
      cand.incoming = Action{k, pick, place};
      if (SearchNode* child = try_enqueue(std::move(cand))) children.push_back(child);
    };

    if (placement_free(goal, inst_.radius(k), node->state.arrangement, inst_, k)) {
      make_child(goal, true);
    } else {
      for (int s = 0; s < samples_per_object_; ++s) {
        if (auto p = sample_buffer(k, node)) make_child(*p, false);
      }
    }
  }
  ++stats_.expansions;
  return children;
}

void Searcher::adopt(Plan plan, double elapsed_s) {
  best_cost_ = plan.total_cost;
  best_ = std::move(plan);
  stats_.best_cost_trace.emplace_back(elapsed_s, best_cost_);
}

bool Searcher::goal_attempt(const SearchNode* node) {
  ++stats_.goal_attempts;
  SolverBudget budget = cfg_.attempt_budget;
  budget.rng_seed = rng_.next_u64();
  auto tail = solve(node->state, inst_, budget, node->moved_object());
  if (!tail) return false;
  ++stats_.attempts_succeeded;

  std::vector<Action> actions = reconstruct_path(node);
  actions.insert(actions.end(), tail->begin(), tail->end());
  const double cost = g_cost(inst_.robot_start, actions, cm_, inst_.workspace).total();
  if (cost < best_cost_) {
    adopt(Plan{std::move(actions), cost, Provenance::GoalAttempted}, elapsed());
    return true;
  }
  return false;
}

PlanResult Searcher::run() {
  while (true) {
    if (elapsed() >= cfg_.timeout_s) { stats_.terminated = "timeout"; break; }
    if (cfg_.max_iterations != 0 && stats_.iterations >= cfg_.max_iterations) {
      stats_.terminated = "timeout";
      break;
    }
    if (cfg_.max_nodes != 0 && stats_.nodes_created >= cfg_.max_nodes) {
      stats_.terminated = "budget";
      break;
    }
    if (heap_.empty()) { stats_.terminated = "exhausted"; break; }

    HeapEntry top = heap_.top();
    heap_.pop();
    StateKey key = state_key(top.node->state);
    auto it = open_index_.find(key);
    if (it == open_index_.end() || it->second.first != top.node) continue;  // stale entry
    if (!below_prune_threshold(top.f)) {
      open_index_.erase(it);
      continue;  // lazily pruned
    }
    open_index_.erase(it);
    SearchNode* node = top.node;
    ++stats_.iterations;

    if (arrangement_at_goal(node->state.arrangement, inst_)) {
      // Popping a goal state ends the search; its path is a candidate plan.
      std::vector<Action> actions = reconstruct_path(node);
      const double cost = g_cost(inst_.robot_start, actions, cm_, inst_.workspace).total();
      if (cost < best_cost_) adopt(Plan{std::move(actions), cost, Provenance::Raw}, elapsed());
      stats_.terminated = "goal";
      break;
    }

    closed_[std::move(key)] = node->g;
    expand(node);
    if (cfg_.goal_attempting) goal_attempt(node);
  }

  PlanResult result;
  result.plan = best_;
  result.stats = stats_;
  return result;
}

PlanResult plan(const Instance& inst, const CostModel& cm, const SearchConfig& cfg) {
  Searcher searcher(inst, cm, cfg);
  return searcher.run();
}

}  // namespace strap
