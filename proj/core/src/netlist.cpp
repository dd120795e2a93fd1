#include "cfft/netlist.hpp"

#include <unordered_set>

#include "cfft/plan_document.hpp"

namespace cfft {

using nlohmann::json;

namespace {

class NodeBuilder {
 public:
  std::uint64_t add(json& nodes, const char* op, std::vector<std::uint64_t> in) {
    const std::uint64_t id = next_++;
    nodes.push_back({{"id", id}, {"op", op}, {"in", std::move(in)}});
    return id;
  }
  /// wire for one input, xor for several.
  std::uint64_t sum(json& nodes, std::vector<std::uint64_t> in) {
    return add(nodes, in.size() == 1 ? "wire" : "xor", std::move(in));
  }

 private:
  std::uint64_t next_ = 0;
};

}  // namespace

json export_netlist(const AdditionNetwork& net) {
  const BlockCyclicForm& form = net.form();
  const std::size_t k = form.k;
  NodeBuilder nb;

  json doc;
  doc["format"] = kNetlistFormat;
  doc["version"] = kNetlistVersion;
  doc["n"] = form.n;
  doc["k"] = k;
  doc["m"] = form.m;
  doc["r"] = net.r();
  doc["fixed_reversed"] = net.fixed_reversed();

  json stages = json::array();

  json pad_nodes = json::array();
  std::vector<std::uint64_t> u_id(form.extended_size());
  for (std::size_t p = 0; p < u_id.size(); ++p) {
    if (form.is_padding(p)) {
      u_id[p] = nb.add(pad_nodes, "zero", {});
    } else {
      u_id[p] = nb.add(pad_nodes, "input", {});
      pad_nodes.back()["index"] = form.u_map[p];
    }
  }
  stages.push_back({{"name", "pad_reorder"}, {"nodes", std::move(pad_nodes)}});

  // x_id[t][i1]: node feeding input i1 of module t, absent for dead inputs.
  json pre_nodes = json::array();
  std::vector<std::vector<std::optional<std::uint64_t>>> x_id(
      net.r(), std::vector<std::optional<std::uint64_t>>(k));
  for (std::size_t t = 0; t < net.r(); ++t) {
    if (net.elided(t)) continue;
    for (std::size_t i1 = 0; i1 < k; ++i1) {
      const auto& terms = net.pre_terms(t, i1);
      if (terms.empty()) continue;
      std::vector<std::uint64_t> in;
      for (std::size_t p : terms) in.push_back(u_id[p]);
      x_id[t][i1] = nb.sum(pre_nodes, std::move(in));
    }
  }
  stages.push_back({{"name", "pre_addition"}, {"nodes", std::move(pre_nodes)}});

  json modules = json::array();
  std::vector<std::vector<std::optional<std::uint64_t>>> y_id(
      net.r(), std::vector<std::optional<std::uint64_t>>(k));
  for (std::size_t t = 0; t < net.r(); ++t) {
    json mod = {{"index", t}, {"elided", net.elided(t)}};
    if (net.elided(t)) {
      modules.push_back(std::move(mod));
      continue;
    }
    const FourRussiansTableau& tab = net.mvp(t);
    mod["k"] = tab.k();
    mod["s"] = tab.s();
    json groups = json::array();
    json table_nodes = json::array();
    // entry[g][c]: node holding combination c of group g.
    std::vector<std::vector<std::uint64_t>> entry(tab.groups().size());
    for (std::size_t g = 0; g < tab.groups().size(); ++g) {
      const auto& grp = tab.groups()[g];
      json tables = json::array();
      for (std::size_t c = 0; c < grp.selection.rows(); ++c) tables.push_back(grp.selection.row_hex(c));
      groups.push_back({{"first_col", grp.first_col},
                        {"width", grp.width},
                        {"live_mask", to_hex(grp.live_mask)},
                        {"tables", std::move(tables)}});

      entry[g].assign(std::size_t{1} << grp.width, 0);
      const unsigned live = static_cast<unsigned>(std::popcount(grp.live_mask));
      for (std::uint32_t i = 1; i < (std::uint32_t{1} << live); ++i) {
        const std::uint32_t gray = i ^ (i >> 1);
        const std::uint32_t combo = deposit_bits(gray, grp.live_mask);
        if (std::has_single_bit(gray)) {
          const std::size_t col = grp.first_col + static_cast<std::size_t>(std::countr_zero(combo));
          entry[g][combo] = nb.add(table_nodes, "wire", {*x_id[t][col]});
          continue;
        }
        const std::uint32_t prev = deposit_bits((i - 1) ^ ((i - 1) >> 1), grp.live_mask);
        const std::size_t col = grp.first_col + static_cast<std::size_t>(std::countr_zero(combo ^ prev));
        entry[g][combo] = nb.add(table_nodes, "xor", {entry[g][prev], *x_id[t][col]});
      }
    }
    json row_nodes = json::array();
    json outputs = json::array();
    for (std::size_t row = 0; row < tab.k(); ++row) {
      std::vector<std::uint64_t> in;
      for (std::size_t g = 0; g < tab.groups().size(); ++g) {
        const std::uint32_t c = tab.chunk(row, g);
        if (c != 0) in.push_back(entry[g][c]);
      }
      if (in.empty()) {
        outputs.push_back(nullptr);
        continue;
      }
      y_id[t][row] = nb.sum(row_nodes, std::move(in));
      outputs.push_back(*y_id[t][row]);
    }
    mod["groups"] = std::move(groups);
    mod["table_nodes"] = std::move(table_nodes);
    mod["row_nodes"] = std::move(row_nodes);
    mod["outputs"] = std::move(outputs);
    modules.push_back(std::move(mod));
  }
  stages.push_back({{"name", "mvp"}, {"modules", std::move(modules)}});

  json post_nodes = json::array();
  std::vector<std::optional<std::uint64_t>> bu_id(form.extended_size());
  for (std::size_t i1 = 0; i1 < k; ++i1) {
    for (std::size_t i2 = 0; i2 < form.coset_sizes[i1]; ++i2) {
      const auto& terms = net.post_terms(i2, i1);
      if (terms.empty()) continue;
      std::vector<std::uint64_t> in;
      for (std::size_t t : terms) in.push_back(*y_id[t][i1]);
      bu_id[i2 * k + i1] = nb.sum(post_nodes, std::move(in));
      post_nodes.back()["row"] = i2 * k + i1;
    }
  }
  stages.push_back({{"name", "post_addition"}, {"nodes", std::move(post_nodes)}});

  json outputs = json::array();
  for (std::size_t j = 0; j < form.n; ++j) {
    const auto& id = bu_id[form.out_map[j]];
    if (id) outputs.push_back(*id);
    else outputs.push_back(nullptr);
  }
  stages.push_back({{"name", "extract"}, {"outputs", std::move(outputs)}});
  doc["stages"] = std::move(stages);

  const AddnetCounts& c = net.static_counts();
  doc["counts"] = {{"pre", c.pre}, {"mvp", c.mvp}, {"post", c.post}, {"total", c.total()}};
  return doc;
}

namespace {

std::uint64_t xor_cost(const json& nodes) {
  std::uint64_t adds = 0;
  for (const auto& node : nodes) {
    if (node.at("op") == "xor") adds += node.at("in").size() - 1;
  }
  return adds;
}

template <class Fn>
void for_each_node(const json& doc, Fn&& fn) {
  for (const auto& stage : doc.at("stages")) {
    if (stage.contains("nodes")) {
      for (const auto& node : stage.at("nodes")) fn(node);
    }
    if (stage.contains("modules")) {
      for (const auto& mod : stage.at("modules")) {
        if (mod.at("elided").get<bool>()) continue;
        for (const auto& node : mod.at("table_nodes")) fn(node);
        for (const auto& node : mod.at("row_nodes")) fn(node);
      }
    }
  }
}

}  // namespace

AddnetCounts netlist_counts(const json& doc) {
  AddnetCounts c;
  for (const auto& stage : doc.at("stages")) {
    const auto name = stage.at("name").get<std::string>();
    if (name == "pre_addition") c.pre += xor_cost(stage.at("nodes"));
    if (name == "post_addition") c.post += xor_cost(stage.at("nodes"));
    if (name == "mvp") {
      for (const auto& mod : stage.at("modules")) {
        if (mod.at("elided").get<bool>()) continue;
        c.mvp += xor_cost(mod.at("table_nodes")) + xor_cost(mod.at("row_nodes"));
      }
    }
  }
  return c;
}

bool padding_reaches_outputs(const json& doc) {
  // Nodes are emitted in topological order, so one forward pass suffices.
  std::unordered_set<std::uint64_t> tainted;
  for_each_node(doc, [&](const json& node) {
    const auto id = node.at("id").get<std::uint64_t>();
    if (node.at("op") == "zero") {
      tainted.insert(id);
      return;
    }
    for (const auto& in : node.at("in")) {
      if (tainted.count(in.get<std::uint64_t>()) != 0) {
        tainted.insert(id);
        return;
      }
    }
  });
  for (const auto& stage : doc.at("stages")) {
    if (stage.at("name") != "extract") continue;
    for (const auto& out : stage.at("outputs")) {
      if (!out.is_null() && tainted.count(out.get<std::uint64_t>()) != 0) return true;
    }
  }
  return false;
}

}  // namespace cfft
