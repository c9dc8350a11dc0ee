#include "cusp/io.hpp"

namespace cusp {

  namespace {

    Json letter_json(Letter k) {
      if (k == kMinusInfty) {
        return "-inf";
      }
      return k;
    }

    Json digits_json(std::vector<Integer> const& v) {
      Json out = Json::array();
      for (auto const& d : v) {
        if (d <= Integer(std::numeric_limits<long long>::max())) {
          out.push_back(d.convert_to<long long>());
        } else {
          out.push_back(d.str());
        }
      }
      return out;
    }

    Json quadratic_json(QuadraticNumber const& q) {
      return to_string(BoundaryValue::from_quadratic(q));
    }

    bool has_tag(std::string const& s) {
      return s.rfind("rat:", 0) == 0 || s.rfind("surd:", 0) == 0
             || s == "inf" || s.rfind("approx:", 0) == 0;
    }

    void collect(Json const& j, std::vector<std::string>& out) {
      if (j.is_string()) {
        auto const& s = j.get_ref<std::string const&>();
        if (has_tag(s)) {
          out.push_back(s);
        }
      } else if (j.is_structured()) {
        for (auto const& v : j) {
          collect(v, out);
        }
      }
    }

  }  // namespace

  Json to_json(GroupElement const& g) {
    return to_string(g);
  }

  Json to_json(Interval const& I) {
    return {{"lo", to_string(I.lo)}, {"hi", to_string(I.hi)}};
  }

  Json to_json(FordDomain const& d) {
    Json spheres = Json::array(), vertices = Json::array(),
         maxima = Json::array();
    for (auto const& s : d.spheres) {
      spheres.push_back({{"center", to_string(s.center)},
                         {"radius", to_string(s.radius)},
                         {"element", to_json(s.element)}});
    }
    for (auto const& v : d.vertices) {
      vertices.push_back({{"re", to_string(v.re)}, {"im", to_string(v.im)}});
    }
    for (auto const& m : d.maxima) {
      maxima.push_back(
          {{"re", to_string(m.re_exact())}, {"im", to_string(m.im_exact())}});
    }
    return {{"p", d.p},
            {"spheres", spheres},
            {"vertices", vertices},
            {"maxima", maxima}};
  }

  Json to_json(ModularDomain const& d) {
    Json spheres = Json::array();
    for (auto const& s : d.spheres) {
      spheres.push_back({{"center", to_string(s.center)},
                         {"radius", to_string(s.radius)},
                         {"element", to_json(s.element)}});
    }
    return {{"modular", true},
            {"spheres", spheres},
            {"vertex",
             {{"re", to_string(d.vertex.re)}, {"im", to_string(d.vertex.im)}}}};
  }

  Json to_json(BranchTable const& t) {
    Json branches = Json::array();
    for (auto const& b : t.branches) {
      branches.push_back({{"label", letter_json(b.label)},
                          {"interval", to_json(b.x)},
                          {"y_interval", to_json(b.y)},
                          {"h", to_json(b.h)},
                          {"image", to_json(b.image)}});
    }
    Json out;
    if (t.modular) {
      out["modular"] = true;
    } else {
      out["p"] = t.p;
    }
    out["branches"] = branches;
    return out;
  }

  Json to_json(CodingSequence const& s, bool trace) {
    Json out;
    out["modular"]   = s.modular;
    out["two_sided"] = s.two_sided;
    Json letters     = Json::array();
    for (Letter k : s.letters) {
      letters.push_back(letter_json(k));
    }
    out["letters"]     = letters;
    out["termination"] = to_string(s.termination);
    if (s.termination == Termination::period || s.period > 0) {
      out["preperiod"] = s.preperiod;
      out["period"]    = s.period;
    }
    if (s.cusp) {
      out["cusp"] = to_string(*s.cusp);
    }
    if (s.two_sided) {
      Json past = Json::array();
      for (Letter k : s.past) {
        past.push_back(letter_json(k));
      }
      out["past"]             = past;
      out["past_termination"] = to_string(s.past_termination);
    }
    if (trace) {
      Json states = Json::array();
      for (auto const& v : s.states) {
        states.push_back(to_string(v));
      }
      out["states"] = states;
    }
    return out;
  }

  Json to_json(ContinuedFraction const& cf) {
    return {{"preperiod", digits_json(cf.preperiod)},
            {"period", digits_json(cf.period)},
            {"truncated", cf.truncated},
            {"text", to_string(cf)}};
  }

  Json to_json(Crossing const& c) {
    return {{"translate", to_json(c.g)},
            {"line", letter_json(c.c)},
            {"tail", to_string(c.tail)},
            {"head", to_string(c.head)},
            {"re", quadratic_json(c.re)},
            {"re_decimal", static_cast<double>(c.re_d)},
            {"im_decimal", static_cast<double>(c.im)}};
  }

  Json to_json(ReturnRecord const& r, bool trace) {
    Json interior = Json::array();
    for (auto const& c : r.interior) {
      interior.push_back(to_json(c));
    }
    Json out{{"letter", letter_json(r.letter)},
             {"translate", to_json(r.exterior.g)},
             {"line", letter_json(r.exterior.c)},
             {"crossing", to_json(r.exterior)},
             {"renormalized",
              {{"backward", to_string(r.renormalized.backward)},
               {"forward", to_string(r.renormalized.forward)}}},
             {"interior", interior}};
    if (trace) {
      Json all = Json::array();
      for (auto const& c : r.trace) {
        all.push_back(to_json(c));
      }
      out["trace"] = all;
    }
    return out;
  }

  Json to_json(ConjugacyReport const& r) {
    Json mismatches = Json::array();
    for (std::size_t i = 0; i < r.records.size(); ++i) {
      auto const& s = r.records[i];
      if (!s.match) {
        mismatches.push_back({{"index", i},
                              {"backward", to_string(s.geodesic.backward)},
                              {"forward", to_string(s.geodesic.forward)},
                              {"detail", s.detail}});
      }
    }
    Json out;
    if (r.modular) {
      out["modular"] = true;
    } else {
      out["p"] = r.p;
    }
    out["samples"]    = r.samples;
    out["seed"]       = r.seed;
    out["bound"]      = r.bound;
    out["matches"]    = r.matches;
    out["mismatches"] = mismatches;
    return out;
  }

  Json to_json(Complex z) {
    return {{"re", z.real()}, {"im", z.imag()}};
  }

  Json document(std::string const& kind, Json payload) {
    Json out{{"schema", kSchemaVersion}, {"kind", kind}};
    for (auto it = payload.begin(); it != payload.end(); ++it) {
      out[it.key()] = it.value();
    }
    return out;
  }

  std::vector<std::string> exact_value_strings(Json const& j) {
    std::vector<std::string> out;
    collect(j, out);
    return out;
  }

}  // namespace cusp
