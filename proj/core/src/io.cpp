#include "capheight/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "capheight/error.hpp"

namespace capheight {

namespace {

using nlohmann::json;

struct Token {
  std::string text;
  int line;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) out.push_back({std::move(cur), line});
    cur.clear();
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      --i;
      continue;
    }
    if (c == '\n') {
      flush();
      out.push_back({"\n", line});
      ++line;
    } else if (c == '{' || c == '}') {
      flush();
      out.push_back({std::string(1, c), line});
    } else if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
      flush();
    } else {
      cur.push_back(c);
    }
  }
  flush();
  return out;
}

double to_number(const Token& t) {
  try {
    std::size_t used = 0;
    const double v = std::stod(t.text, &used);
    if (used != t.text.size()) throw std::invalid_argument(t.text);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorKind::Parse, "line " + std::to_string(t.line) + ": expected a number, got '" + t.text + "'");
  }
}

Integer to_integer(const std::string& s) {
  std::string digits = s;
  if (!digits.empty() && digits[0] == '+') digits.erase(0, 1);
  const std::size_t start = (!digits.empty() && digits[0] == '-') ? 1 : 0;
  if (digits.size() == start || !std::all_of(digits.begin() + static_cast<std::ptrdiff_t>(start), digits.end(),
                                             [](char c) { return c >= '0' && c <= '9'; }))
    throw Error(ErrorKind::Parse, "not an integer: '" + s + "'");
  return Integer(digits);
}

class SetParser {
public:
  explicit SetParser(std::vector<Token> tokens) : t_(std::move(tokens)) {}

  SetDescriptor parse_all() {
    std::vector<SetDescriptor> parts = items(false);
    if (parts.empty()) throw Error(ErrorKind::Parse, "empty set description");
    return parts.size() == 1 ? parts.front() : make_union(std::move(parts));
  }

private:
  bool at_end() const { return pos_ >= t_.size(); }
  const Token& peek() const { return t_[pos_]; }

  std::vector<SetDescriptor> items(bool nested) {
    std::vector<SetDescriptor> parts;
    while (!at_end()) {
      if (peek().text == "\n") {
        ++pos_;
        continue;
      }
      if (peek().text == "}") {
        if (!nested) throw Error(ErrorKind::Parse, "line " + std::to_string(peek().line) + ": unmatched '}'");
        ++pos_;
        return parts;
      }
      parts.push_back(item());
    }
    if (nested) throw Error(ErrorKind::Parse, "missing '}'");
    return parts;
  }

  // numeric tokens up to the end of the line or a brace
  std::vector<Token> operands() {
    std::vector<Token> out;
    while (!at_end() && peek().text != "\n" && peek().text != "{" && peek().text != "}") out.push_back(t_[pos_++]);
    return out;
  }

  SetDescriptor item() {
    const Token kw = t_[pos_++];
    const std::string where = "line " + std::to_string(kw.line) + ": ";
    if (kw.text == "union") {
      while (!at_end() && peek().text == "\n") ++pos_;
      if (at_end() || peek().text != "{") throw Error(ErrorKind::Parse, where + "expected '{' after union");
      ++pos_;
      std::vector<SetDescriptor> parts = items(true);
      if (parts.empty()) throw Error(ErrorKind::Parse, where + "empty union");
      return make_union(std::move(parts));
    }
    std::vector<Token> ops = operands();
    auto need = [&](std::size_t k) {
      if (ops.size() != k)
        throw Error(ErrorKind::Parse, where + kw.text + " takes " + std::to_string(k) + " numbers, got " + std::to_string(ops.size()));
    };
    if (kw.text == "disk" || kw.text == "circle") {
      need(3);
      const Complex c(to_number(ops[0]), to_number(ops[1]));
      const double r = to_number(ops[2]);
      return kw.text == "disk" ? make_disk(c, r) : make_circle(c, r);
    }
    if (kw.text == "interval") {
      need(2);
      return make_interval(to_number(ops[0]), to_number(ops[1]));
    }
    if (kw.text == "julia") {
      std::vector<Integer> c;
      for (const auto& t : ops) {
        try {
          c.push_back(to_integer(t.text));
        } catch (const Error&) {
          throw Error(ErrorKind::Parse, where + "julia coefficients must be integers, got '" + t.text + "'");
        }
      }
      return make_julia(IntPolynomial(std::move(c)));
    }
    if (kw.text == "arc") {
      bool closed = false;
      if (!ops.empty() && ops.front().text == "closed") {
        closed = true;
        ops.erase(ops.begin());
      }
      if (ops.size() % 2 != 0) throw Error(ErrorKind::Parse, where + "arc needs x y pairs");
      std::vector<Complex> pts;
      for (std::size_t i = 0; i < ops.size(); i += 2) pts.emplace_back(to_number(ops[i]), to_number(ops[i + 1]));
      return make_arc(std::move(pts), closed);
    }
    throw Error(ErrorKind::Parse, where + "unknown primitive '" + kw.text + "'");
  }

  std::vector<Token> t_;
  std::size_t pos_ = 0;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void format_into(const SetDescriptor& set, std::ostringstream& os, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Disk>) {
          os << pad << "disk " << num(s.center.real()) << ' ' << num(s.center.imag()) << ' ' << num(s.radius) << '\n';
        } else if constexpr (std::is_same_v<T, Circle>) {
          os << pad << "circle " << num(s.center.real()) << ' ' << num(s.center.imag()) << ' ' << num(s.radius) << '\n';
        } else if constexpr (std::is_same_v<T, Interval>) {
          os << pad << "interval " << num(s.a) << ' ' << num(s.b) << '\n';
        } else if constexpr (std::is_same_v<T, JuliaSet>) {
          os << pad << "julia " << s.poly.to_string() << '\n';
        } else if constexpr (std::is_same_v<T, Arc>) {
          os << pad << "arc" << (s.closed ? " closed" : "");
          for (std::size_t i = 0; i < s.size(); ++i) {
            const Complex p = s.point(i);
            os << ' ' << num(p.real()) << ' ' << num(p.imag());
          }
          os << '\n';
        } else {
          os << pad << "union {\n";
          for (const auto& p : s->parts) format_into(p, os, indent + 2);
          os << pad << "}\n";
        }
      },
      set);
}

json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return report_round(v);
}

json complex_json(Complex z) { return json{{"re", number(z.real())}, {"im", number(z.imag())}}; }

}  // namespace

SetDescriptor parse_set(std::string_view text) { return SetParser(tokenize(text)).parse_all(); }

SetDescriptor load_set(const std::filesystem::path& path) {
  try {
    return parse_set(read_text(path));
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.detail());
  }
}

std::string format_set(const SetDescriptor& set) {
  std::ostringstream os;
  format_into(set, os, 0);
  return os.str();
}

IntPolynomial parse_polynomial(std::string_view text) {
  std::vector<Integer> c;
  for (const Token& t : tokenize(text)) {
    if (t.text == "\n") continue;
    if (t.text == "{" || t.text == "}") throw Error(ErrorKind::Parse, "unexpected brace in polynomial");
    c.push_back(to_integer(t.text));
  }
  if (c.empty()) throw Error(ErrorKind::Parse, "empty polynomial");
  return IntPolynomial(std::move(c));
}

IntPolynomial load_polynomial(const std::filesystem::path& path) {
  try {
    return parse_polynomial(read_text(path));
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.detail());
  }
}

std::vector<IntPolynomial> load_family(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw Error(ErrorKind::InvalidConfig, "not a directory: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".poly") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw Error(ErrorKind::InvalidConfig, "no .poly files in " + dir.string());
  std::vector<IntPolynomial> out;
  out.reserve(files.size());
  for (const auto& f : files) out.push_back(load_polynomial(f));
  return out;
}

DiscreteMeasure parse_measure_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
  if (!j.is_array()) throw Error(ErrorKind::Parse, "roots file must hold a JSON array");
  DiscreteMeasure mu;
  const double uniform = j.empty() ? 0.0 : 1.0 / static_cast<double>(j.size());
  for (const auto& a : j) {
    if (!a.is_object() || !a.contains("re") || !a.contains("im")) throw Error(ErrorKind::Parse, "each atom needs re and im");
    try {
      const double w = a.contains("weight") ? a.at("weight").get<double>() : uniform;
      if (!(w >= 0.0)) throw Error(ErrorKind::Parse, "negative weight");
      mu.atoms.push_back({Complex(a.at("re").get<double>(), a.at("im").get<double>()), w});
    } catch (const json::exception& e) {
      throw Error(ErrorKind::Parse, e.what());
    }
  }
  return mu;
}

DiscreteMeasure load_measure(const std::filesystem::path& path) {
  try {
    return parse_measure_json(read_text(path));
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.detail());
  }
}

std::string measure_json(const DiscreteMeasure& mu) {
  json j = json::array();
  for (const auto& a : mu.atoms) j.push_back({{"re", number(a.point.real())}, {"im", number(a.point.imag())}, {"weight", number(a.weight)}});
  return j.dump(2) + "\n";
}

double report_round(double v) {
  if (!std::isfinite(v)) return v;
  if (v == 0.0) return 0.0;  // drops the sign of -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

std::string height_reports_json(const std::vector<HeightReport>& reports) {
  json arr = json::array();
  for (const auto& r : reports) {
    json roots = json::array();
    for (std::size_t i = 0; i < r.roots.size(); ++i) {
      json z = complex_json(r.roots[i]);
      if (i < r.per_root_green.size()) z["green"] = number(r.per_root_green[i]);
      // only filled when the outer-domain height was requested
      if (i < r.root_in_outer_domain.size()) z["outer_domain"] = static_cast<bool>(r.root_in_outer_domain[i]);
      roots.push_back(std::move(z));
    }
    json j{{"polynomial", r.polynomial.to_string()},
           {"set", r.set},
           {"degree", r.degree},
           {"leading_log", number(r.leading_log)},
           {"weil_height", number(r.weil_height)},
           {"h_sigma", number(r.h_sigma)},
           {"h_hat_sigma", number(r.h_hat_sigma)},
           {"log_mahler", number(r.log_mahler)},
           {"log_mahler_sigma", number(r.log_mahler_sigma)},
           {"roots", std::move(roots)},
           {"residual_bound", number(r.residual_bound)},
           {"tolerances", {{"root_residual", r.tolerances.root_residual}, {"height", r.tolerances.height}}}};
    j["irreducible"] = r.irreducible ? json(*r.irreducible) : json(nullptr);
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

std::string construction_state_json(const ConstructionState& state, const MassLaw& law) {
  json pts = json::array();
  for (std::size_t i = 0; i < state.arc.size(); ++i) pts.push_back(complex_json(state.arc.point(i)));
  json hist = json::array();
  for (const auto& h : state.history) hist.push_back({{"theta", number(h.theta)}, {"robin", number(h.robin)}});
  json j{{"set", describe(state.sigma)},
         {"level", state.level},
         {"theta", number(state.theta)},
         {"robin", number(state.joint_model.robin_constant)},
         {"sigma_capacity", number(state.sigma_capacity)},
         {"mass_on_sigma", number(law.measured)},
         {"predicted", number(law.predicted)},
         {"gap", number(law.gap)},
         {"green_integral", number(law.green_integral)},
         {"bisection", std::move(hist)},
         {"arc_closed", state.arc.closed},
         {"arc_points", std::move(pts)}};
  return j.dump(2) + "\n";
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidConfig, "cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidConfig, "cannot write " + path.string());
  out << text;
}

}  // namespace capheight
