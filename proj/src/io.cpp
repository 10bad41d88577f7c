// Copyright 2026 The bosim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "bosim/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace bosim {

using nlohmann::json;

std::string format_double(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

json unitary_to_json(const Unitary& u) {
  const int m = u.modes();
  json re = json::array();
  json im = json::array();
  for (int i = 0; i < m; ++i) {
    json re_row = json::array();
    json im_row = json::array();
    for (int j = 0; j < m; ++j) {
      re_row.push_back(u.matrix()(i, j).real());
      im_row.push_back(u.matrix()(i, j).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  return json{{"m", m}, {"re", std::move(re)}, {"im", std::move(im)}};
}

Unitary unitary_from_json(const json& j, double tolerance) {
  try {
    const int m = j.at("m").get<int>();
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (m < 1 || re.size() != static_cast<std::size_t>(m) || im.size() != static_cast<std::size_t>(m)) {
      throw FormatError("unitary: row count does not match m");
    }
    ComplexMatrix matrix(m, m);
    for (int i = 0; i < m; ++i) {
      if (re[i].size() != static_cast<std::size_t>(m) || im[i].size() != static_cast<std::size_t>(m)) {
        throw FormatError("unitary: row " + std::to_string(i) + " has wrong length");
      }
      for (int k = 0; k < m; ++k) {
        matrix(i, k) = Complex(re[i][k].get<double>(), im[i][k].get<double>());
      }
    }
    const double deviation = unitarity_deviation(matrix);
    if (!(deviation <= tolerance)) {
      throw FormatError("unitary: unitarity deviation " + format_double(deviation) +
                        " exceeds " + format_double(tolerance));
    }
    return Unitary(std::move(matrix));
  } catch (const json::exception& e) {
    throw FormatError(std::string("unitary: ") + e.what());
  }
}

json layout_to_json(const CircuitLayout& layout) {
  json elements = json::array();
  for (const auto& element : layout.elements) {
    if (const auto* c = std::get_if<Coupler>(&element)) {
      elements.push_back({{"type", "coupler"}, {"modes", {c->mode, c->mode + 1}}, {"t2", c->t2}});
    } else {
      const auto& p = std::get<PhaseShift>(element);
      elements.push_back({{"type", "phase"}, {"mode", p.mode}, {"phi", p.phi}});
    }
  }
  int max_mode = 0;
  for (const auto& e : elements) {
    max_mode = std::max(max_mode, e.contains("modes") ? e["modes"][1].get<int>() : e["mode"].get<int>());
  }
  // The bare list is the canonical form; it cannot express modes that no
  // element touches, so only then is the mode count wrapped around it.
  if (max_mode == layout.modes) {
    return elements;
  }
  return json{{"m", layout.modes}, {"elements", std::move(elements)}};
}

CircuitLayout layout_from_json(const json& j) {
  try {
    CircuitLayout layout;
    const json& elements = j.is_array() ? j : j.at("elements");
    int max_mode = 0;
    for (const auto& e : elements) {
      const auto type = e.at("type").get<std::string>();
      if (type == "coupler") {
        const auto modes = e.at("modes").get<std::vector<int>>();
        if (modes.size() != 2 || modes[1] != modes[0] + 1) {
          throw FormatError("layout: coupler must act on adjacent modes [i, i+1]");
        }
        layout.elements.emplace_back(Coupler{modes[0], e.at("t2").get<double>()});
        max_mode = std::max(max_mode, modes[1]);
      } else if (type == "phase") {
        const int mode = e.at("mode").get<int>();
        layout.elements.emplace_back(PhaseShift{mode, e.at("phi").get<double>()});
        max_mode = std::max(max_mode, mode);
      } else {
        throw FormatError("layout: unknown element type '" + type + "'");
      }
    }
    layout.modes = j.is_array() ? max_mode : j.at("m").get<int>();
    layout.validate();
    return layout;
  } catch (const json::exception& e) {
    throw FormatError(std::string("layout: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

json bank_to_json(const SourceBank& bank) {
  json sources = json::array();
  for (const auto& s : bank.sources) {
    sources.push_back({{"id", s.id},
                       {"epsilon", s.epsilon},
                       {"eta_herald", s.eta_herald},
                       {"input_mode", s.input_mode},
                       {"pulse_offset", s.pulse_offset}});
  }
  json j{{"modes", bank.modes},
         {"pulse_rate", bank.pulse_rate},
         {"eta_detect", bank.eta_detect},
         {"sources", std::move(sources)}};
  if (bank.fixed_pair) {
    const auto& fp = *bank.fixed_pair;
    j["fixed_pair"] = {{"modes", {fp.modes[0], fp.modes[1]}},
                       {"epsilon", fp.epsilon},
                       {"eta_herald", fp.eta_herald},
                       {"pulse_offset", fp.pulse_offset},
                       {"required", fp.required}};
  }
  if (bank.switcher) {
    j["switcher"] = {{"source", bank.switcher->source_id}, {"ports", bank.switcher->ports}};
  }
  return j;
}

SourceBank bank_from_json(const json& j) {
  try {
    SourceBank bank;
    bank.modes = j.at("modes").get<int>();
    bank.pulse_rate = j.value("pulse_rate", 80e6);
    bank.eta_detect = j.value("eta_detect", 1.0);
    for (const auto& s : j.at("sources")) {
      Source src;
      src.id = s.at("id").get<int>();
      src.epsilon = s.at("epsilon").get<double>();
      src.eta_herald = s.value("eta_herald", 1.0);
      src.input_mode = s.value("input_mode", 0);
      src.pulse_offset = s.value("pulse_offset", 0);
      bank.sources.push_back(src);
    }
    if (j.contains("fixed_pair") && !j["fixed_pair"].is_null()) {
      const auto& f = j["fixed_pair"];
      FixedPair fp;
      const auto modes = f.at("modes").get<std::vector<int>>();
      if (modes.size() != 2) {
        throw FormatError("bank: fixed_pair needs exactly two modes");
      }
      fp.modes = {modes[0], modes[1]};
      fp.epsilon = f.at("epsilon").get<double>();
      fp.eta_herald = f.value("eta_herald", 1.0);
      fp.pulse_offset = f.value("pulse_offset", 0);
      fp.required = f.value("required", false);
      bank.fixed_pair = fp;
    }
    if (j.contains("switcher") && !j["switcher"].is_null()) {
      const auto& s = j["switcher"];
      bank.switcher = Switcher{s.at("source").get<int>(), s.at("ports").get<std::vector<int>>()};
    }
    bank.validate();
    return bank;
  } catch (const json::exception& e) {
    throw FormatError(std::string("bank: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

json report_to_json(const ValidationReport& report) {
  json thresholds = json::array();
  for (const auto& t : report.thresholds) {
    thresholds.push_back({{"input", t.input.modes},
                          {"threshold", t.threshold},
                          {"exhaustive", t.exhaustive},
                          {"samples", t.samples}});
  }
  return json{{"test", report.test},
              {"n_events", report.n_events},
              {"final_counter", report.trajectory.final_value()},
              {"verdict", to_string(report.verdict)},
              {"trajectory", report.trajectory.values},
              {"threshold_info", std::move(thresholds)}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw FormatError("cannot open '" + path + "'");
  }
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError("'" + path + "': " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) {
    throw FormatError("cannot write '" + path + "'");
  }
  out << j.dump(2) << '\n';
}

Unitary load_unitary(const std::string& path, double tolerance) {
  return unitary_from_json(read_json_file(path), tolerance);
}

CircuitLayout load_layout(const std::string& path) { return layout_from_json(read_json_file(path)); }

SourceBank load_bank(const std::string& path) { return bank_from_json(read_json_file(path)); }

std::string join_modes(const std::vector<int>& modes) {
  std::string text;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    if (i > 0) {
      text += '-';
    }
    text += std::to_string(modes[i]);
  }
  return text;
}

std::vector<int> parse_modes(const std::string& text) {
  std::vector<int> modes;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t dash = std::min(text.find('-', pos), text.size());
    int value = 0;
    const auto result = std::from_chars(text.data() + pos, text.data() + dash, value);
    if (result.ec != std::errc() || result.ptr != text.data() + dash) {
      throw FormatError("bad mode list '" + text + "'");
    }
    modes.push_back(value);
    pos = dash + 1;
  }
  return modes;
}

void write_event_log(std::ostream& out, const std::vector<Event>& events) {
  out << "pulse_index,n,input,output\n";
  for (const auto& e : events) {
    out << e.pulse_index << ',' << e.photons() << ',' << join_modes(e.input.modes) << ','
        << join_modes(e.output.occupied_modes()) << '\n';
  }
}

std::vector<Event> read_event_log(std::istream& in, int modes) {
  std::string line;
  auto next_line = [&in, &line] {
    if (!std::getline(in, line)) {
      return false;
    }
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    return true;
  };
  if (!next_line() || line != "pulse_index,n,input,output") {
    throw FormatError("event log: missing header 'pulse_index,n,input,output'");
  }
  std::vector<Event> events;
  std::size_t line_no = 1;
  while (next_line()) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
      fields.push_back(field);
    }
    if (fields.size() != 4) {
      throw FormatError("event log line " + std::to_string(line_no) + ": expected 4 fields");
    }
    try {
      Event e;
      e.pulse_index = std::stoll(fields[0]);
      const int n = std::stoi(fields[1]);
      e.input = InputConfig::from_modes(parse_modes(fields[2]), modes);
      e.output = OutputConfig::from_modes(parse_modes(fields[3]), modes);
      if (e.input.photons() != n || e.output.photons() != n) {
        throw FormatError("photon count does not match n");
      }
      e.pump_pulses.assign(static_cast<std::size_t>(n), e.pulse_index);
      events.push_back(std::move(e));
    } catch (const std::exception& ex) {
      throw FormatError("event log line " + std::to_string(line_no) + ": " + ex.what());
    }
  }
  return events;
}

void save_event_log(const std::string& path, const std::vector<Event>& events) {
  std::ofstream out(path);
  if (!out) {
    throw FormatError("cannot write '" + path + "'");
  }
  write_event_log(out, events);
}

std::vector<Event> load_event_log(const std::string& path, int modes) {
  std::ifstream in(path);
  if (!in) {
    throw FormatError("cannot open '" + path + "'");
  }
  return read_event_log(in, modes);
}

void write_distribution_csv(std::ostream& out, const OutputDistribution& dist) {
  out << "occupation,probability\n";
  for (std::size_t i = 0; i < dist.size(); ++i) {
    out << format_occupation(dist.outcomes[i]) << ',' << format_double(dist.probabilities[i]) << '\n';
  }
}

void write_trajectory_csv(std::ostream& out, const CounterTrajectory& trajectory) {
  out << "event,step,counter\n";
  for (std::size_t i = 0; i < trajectory.values.size(); ++i) {
    out << i + 1 << ',' << trajectory.steps[i] << ',' << trajectory.values[i] << '\n';
  }
}

void write_curve_csv(std::ostream& out, const SuccessCurve& curve) {
  out << "N_set,P_success,stderr\n";
  for (const auto& p : curve.points) {
    out << p.n_set << ',' << format_double(p.p_success) << ',' << format_double(p.standard_error) << '\n';
  }
}

void write_band_csv(std::ostream& out, const BandTable& table) {
  out << "step,mean,sigma";
  for (double k : table.sigma_multiples) {
    out << ",lo_" << format_double(k) << ",hi_" << format_double(k);
  }
  out << '\n';
  for (const auto& row : table.rows) {
    out << row.step << ',' << format_double(row.mean) << ',' << format_double(row.sigma);
    for (const auto& [lo, hi] : row.envelopes) {
      out << ',' << format_double(lo) << ',' << format_double(hi);
    }
    out << '\n';
  }
}

void write_heatmap_csv(std::ostream& out, const Unitary& u) {
  const int m = u.modes();
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (j > 0) {
        out << ',';
      }
      out << format_double(std::norm(u.matrix()(i, j)));
    }
    out << '\n';
  }
}

}  // namespace bosim
