#include "cfft/plan_document.hpp"

#include <fstream>
#include <sstream>

namespace cfft {

using nlohmann::json;

std::string to_hex(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << v;
  return os.str();
}

std::uint64_t from_hex(const std::string& s) {
  if (s.empty() || s.size() > 16) throw std::invalid_argument("bad hexadecimal value '" + s + "'");
  std::uint64_t v = 0;
  for (char c : s) {
    int d;
    if (c >= '0' && c <= '9') d = c - '0';
    else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
    else throw std::invalid_argument("bad hexadecimal value '" + s + "'");
    v = (v << 4) | static_cast<std::uint64_t>(d);
  }
  return v;
}

json plan_to_json(const CfftPlan& plan, const BlockCyclicForm* form) {
  json doc;
  doc["format"] = kPlanFormat;
  doc["version"] = kPlanVersion;
  doc["field"] = {{"m", plan.field.degree()}, {"poly", to_hex(plan.field.poly())}};
  doc["n"] = plan.n;
  json cosets = json::array();
  for (const auto& c : plan.partition.cosets) cosets.push_back(c.elements);
  doc["cosets"] = std::move(cosets);
  json gamma = json::object();
  for (const auto& [size, basis] : plan.bases) gamma[std::to_string(size)] = to_hex(basis.gamma().bits());
  doc["gamma"] = std::move(gamma);
  doc["orientation"] = to_string(plan.orientation);
  json rows = json::array();
  for (std::size_t j = 0; j < plan.A.rows(); ++j) rows.push_back(plan.A.row_hex(j));
  doc["A"] = std::move(rows);

  json bf = {{"present", form != nullptr}};
  if (form != nullptr) {
    bf["k"] = form->k;
    bf["m"] = form->m;
    bf["experimental"] = form->experimental;
    json blocks = json::array();
    for (const auto& c : form->blocks_first_row) {
      json crows = json::array();
      for (std::size_t i = 0; i < c.rows(); ++i) crows.push_back(c.row_hex(i));
      blocks.push_back(std::move(crows));
    }
    bf["c"] = std::move(blocks);
  }
  doc["block_form"] = std::move(bf);
  return doc;
}

CfftPlan plan_from_json(const json& doc) {
  try {
    if (doc.at("format").get<std::string>() != kPlanFormat) {
      throw std::invalid_argument("not a plan document");
    }
    if (doc.at("version").get<int>() != kPlanVersion) {
      throw std::invalid_argument("unsupported plan document version");
    }
    const auto m = doc.at("field").at("m").get<unsigned>();
    const auto poly = static_cast<std::uint32_t>(from_hex(doc.at("field").at("poly").get<std::string>()));
    const Field field = make_field(m, poly);
    const auto n = doc.at("n").get<std::uint32_t>();

    std::map<unsigned, FieldElement> gammas;
    for (const auto& [key, value] : doc.at("gamma").items()) {
      gammas[static_cast<unsigned>(std::stoul(key))] =
          FieldElement{static_cast<std::uint32_t>(from_hex(value.get<std::string>()))};
    }
    CfftPlan plan = build_plan_with_bases(field, n, gammas);

    const auto& cosets = doc.at("cosets");
    if (cosets.size() != plan.k()) throw std::invalid_argument("coset list does not match n");
    for (std::size_t i = 0; i < plan.k(); ++i) {
      if (cosets[i].get<std::vector<std::uint32_t>>() != plan.partition.cosets[i].elements) {
        throw std::invalid_argument("coset " + std::to_string(i) + " does not match n");
      }
    }
    if (orientation_from_string(doc.at("orientation").get<std::string>()) != plan.orientation) {
      throw std::invalid_argument("recorded convolution orientation does not match the bases");
    }

    const auto& rows = doc.at("A");
    if (rows.size() != plan.n) throw std::invalid_argument("A has the wrong number of rows");
    BitMatrix A(plan.n, plan.n);
    for (std::size_t j = 0; j < plan.n; ++j) A.set_row_hex(j, rows[j].get<std::string>());
    plan.A = std::move(A);
    return plan;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed plan document: ") + e.what());
  }
}

void save_plan(const std::filesystem::path& path, const CfftPlan& plan, const BlockCyclicForm* form) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << plan_to_json(plan, form).dump(1) << '\n';
}

CfftPlan load_plan(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw std::invalid_argument("plan file is not valid JSON: " + std::string(e.what()));
  }
  return plan_from_json(doc);
}

}  // namespace cfft
