#include "bandlab/operator_io.hpp"

#include <fstream>

namespace bandlab {

namespace {

Json matrixToJson(const Matrix& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrixFromJson(const Json& j) {
    if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix: expected nested array");
    const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
    const Eigen::Index cols = static_cast<Eigen::Index>(j.at(0).size());
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index c = 0; c < cols; ++c) {
            const Json& e = j.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(c));
            m(i, c) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
        }
    return m;
}

Json tableToJson(const std::vector<Matrix>& table) {
    Json out = Json::array();
    for (const auto& m : table) out.push_back(matrixToJson(m));
    return out;
}

std::vector<Matrix> tableFromJson(const Json& j) {
    std::vector<Matrix> out;
    for (const auto& e : j) out.push_back(matrixFromJson(e));
    return out;
}

Json seqToJson(const CoefficientSequence& s) {
    Json j;
    const auto c = s.klass();
    j["class"] = CoefficientSequence::className(c);
    switch (c) {
        case CoefficientSequence::Class::Constant:
            j["matrix"] = matrixToJson(s.value(0));
            break;
        case CoefficientSequence::Class::Periodic:
            j["period"] = s.tailPeriod(Side::Right);
            j["table"] = tableToJson(s.rightTable());
            break;
        case CoefficientSequence::Class::EventuallyPeriodic:
            j["left"] = Json{{"period", s.tailPeriod(Side::Left)}, {"table", tableToJson(s.leftTable())}};
            j["right"] =
                Json{{"period", s.tailPeriod(Side::Right)}, {"table", tableToJson(s.rightTable())}};
            j["coreStart"] = s.coreStart();
            j["core"] = tableToJson(s.coreTable());
            break;
        case CoefficientSequence::Class::FiniteSupport:
            j["start"] = s.coreStart();
            j["table"] = tableToJson(s.coreTable());
            break;
        case CoefficientSequence::Class::Tabulated: {
            const bool simple = s.leftTable().size() == 1 && s.rightTable().size() == 1 &&
                                (s.leftTable()[0] - s.rightTable()[0]).cwiseAbs().maxCoeff() == 0.0;
            j["start"] = s.coreStart();
            j["table"] = tableToJson(s.coreTable());
            if (simple) {
                j["default"] = matrixToJson(s.leftTable()[0]);
            } else {
                j["defaultLeft"] = tableToJson(s.leftTable());
                j["defaultRight"] = tableToJson(s.rightTable());
            }
            break;
        }
    }
    return j;
}

CoefficientSequence seqFromJson(const Json& j) {
    const std::string cls = j.at("class").get<std::string>();
    if (cls == "constant") return CoefficientSequence::constant(matrixFromJson(j.at("matrix")));
    if (cls == "periodic") return CoefficientSequence::periodic(tableFromJson(j.at("table")));
    if (cls == "eventuallyPeriodic")
        return CoefficientSequence::eventuallyPeriodic(
            tableFromJson(j.at("left").at("table")), tableFromJson(j.at("right").at("table")),
            j.at("coreStart").get<std::int64_t>(), tableFromJson(j.at("core")));
    if (cls == "finiteSupport")
        return CoefficientSequence::finiteSupport(j.at("start").get<std::int64_t>(),
                                                  tableFromJson(j.at("table")));
    if (cls == "tabulated") {
        if (j.contains("default"))
            return CoefficientSequence::tabulated(j.at("start").get<std::int64_t>(),
                                                  tableFromJson(j.at("table")),
                                                  matrixFromJson(j.at("default")));
        return CoefficientSequence::tabulatedWithTails(
            tableFromJson(j.at("defaultLeft")), tableFromJson(j.at("defaultRight")),
            j.at("start").get<std::int64_t>(), tableFromJson(j.at("table")));
    }
    throw std::invalid_argument("diagonals[].class: unknown coefficient class '" + cls + "'");
}

Json coefficientToJson(const Coefficient& a) {
    if (a.latticeDim() == 1) return seqToJson(a.seq1());
    Json j;
    j["class"] = "product";
    Json terms = Json::array();
    for (const auto& t : a.seq2().terms()) {
        Json jt;
        jt["axis0"] = seqToJson(t.axis0);
        jt["axis1"] = seqToJson(t.axis1);
        jt["matrix"] = matrixToJson(t.base);
        terms.push_back(std::move(jt));
    }
    j["terms"] = std::move(terms);
    return j;
}

Coefficient coefficientFromJson(const Json& j, int latticeDim, int d) {
    if (latticeDim == 1) return Coefficient(seqFromJson(j));
    if (j.at("class").get<std::string>() != "product")
        throw std::invalid_argument("diagonals[].class: 2-D coefficients use class 'product'");
    std::vector<ProductTerm> terms;
    for (const auto& jt : j.at("terms"))
        terms.push_back(ProductTerm{seqFromJson(jt.at("axis0")), seqFromJson(jt.at("axis1")),
                                    matrixFromJson(jt.at("matrix"))});
    return Coefficient(ProductSeq(d, std::move(terms)));
}

Json offsetToJson(const MultiIndex& k) {
    Json j = Json::array();
    for (int a = 0; a < k.dim; ++a) j.push_back(k[a]);
    return j;
}

MultiIndex offsetFromJson(const Json& j) {
    if (j.size() == 1) return MultiIndex::of(j.at(0).get<std::int64_t>());
    if (j.size() == 2)
        return MultiIndex::of(j.at(0).get<std::int64_t>(), j.at(1).get<std::int64_t>());
    throw std::invalid_argument("diagonals[].offset: expected 1 or 2 coordinates");
}

}  // namespace

Json toJson(const BandOperator& op) {
    Json j;
    j["schemaVersion"] = kSchemaVersion;
    j["N"] = op.latticeDim();
    j["d"] = op.fiberDim();
    j["tailBound"] = op.tailBound();
    Json diags = Json::array();
    for (const auto& [k, a] : op.diagonals()) {
        Json e;
        e["offset"] = offsetToJson(k);
        Json coeff = coefficientToJson(a);
        e.update(coeff);
        diags.push_back(std::move(e));
    }
    j["diagonals"] = std::move(diags);
    return j;
}

BandOperator operatorFromJson(const Json& j) {
    const int n = j.at("N").get<int>();
    const int d = j.at("d").get<int>();
    BandOperator op(n, d);
    if (j.contains("tailBound")) op.setTailBound(j.at("tailBound").get<double>());
    for (const auto& e : j.at("diagonals"))
        op.setDiagonal(offsetFromJson(e.at("offset")), coefficientFromJson(e, n, d));
    return op;
}

Json toJson(const OperatorSpectrum& spec) {
    Json j;
    j["schemaVersion"] = kSchemaVersion;
    Json reps = Json::array();
    for (const auto& e : spec.entries) {
        Json r;
        r["operator"] = toJson(e.op);
        r["directions"] = e.directions;
        r["orbitId"] = e.orbitId;
        r["orbitUnderShifts"] = e.orbitUnderShifts;
        r["invariantAxes"] = e.invariantAxes;
        reps.push_back(std::move(r));
    }
    j["representatives"] = std::move(reps);
    return j;
}

Json toJson(const ModuliReport& report) {
    Json j;
    j["schemaVersion"] = kSchemaVersion;
    j["p"] = report.tag.name();
    j["mMax"] = report.mMax;
    j["tol"] = report.tol;
    Json rows = Json::array();
    for (const auto& row : report.rows) {
        Json r;
        r["radius"] = row.radius;
        r["j"] = row.j;
        r["q"] = row.q;
        r["sigma"] = row.sigma;
        r["sRight"] = row.sRight;
        r["sLeft"] = row.sLeft;
        r["stable"] = row.stable;
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    return j;
}

namespace {

Json trackToJson(const DefectTrack& t) {
    Json j;
    j["counts"] = t.counts;
    j["gaps"] = t.gaps;
    j["countStable"] = t.countStable;
    j["countGrowing"] = t.countGrowing;
    j["gapStable"] = t.gapStable;
    j["gapVanishing"] = t.gapVanishing;
    j["separated"] = t.separated;
    if (t.estimate) j["estimate"] = *t.estimate;
    j["infinite"] = t.infinite;
    return j;
}

}  // namespace

Json toJson(const SweepClassification& sweep) {
    Json j;
    j["schemaVersion"] = kSchemaVersion;
    j["radii"] = sweep.radii;
    j["tol"] = sweep.tol;
    j["kernel"] = trackToJson(sweep.kernel);
    j["cokernel"] = trackToJson(sweep.cokernel);
    j["squareCounts"] = sweep.squareCounts;
    j["squareSigmaMin"] = sweep.squareSigmaMin;
    j["verdict"] = verdictName(sweep.verdict);
    j["note"] = sweep.note;
    return j;
}

Json toJson(const BoundedBelowResult& r) {
    Json j;
    switch (r.verdict) {
        case BoundedBelowResult::Verdict::BoundedBelow: j["verdict"] = "bounded-below"; break;
        case BoundedBelowResult::Verdict::NotBoundedBelow: j["verdict"] = "not-bounded-below"; break;
        case BoundedBelowResult::Verdict::Undecided: j["verdict"] = "undecided"; break;
    }
    j["lo"] = r.lo;
    j["hi"] = r.hi;
    Json sweep = Json::array();
    for (const auto& [w, v] : r.sweep) sweep.push_back(Json::array({w, v}));
    j["sweep"] = std::move(sweep);
    Json sq = Json::array();
    for (const auto& [w, v] : r.squareSigma) sq.push_back(Json::array({w, v}));
    j["squareSigma"] = std::move(sq);
    j["note"] = r.note;
    return j;
}

Json toJson(const SymbolInvertibility& s) {
    Json j;
    j["invertible"] = s.invertible;
    j["jEstimate"] = s.jEstimate;
    j["gridSize"] = s.curve.gridSize;
    j["liftedDim"] = s.curve.liftedDim;
    j["minValue"] = s.curve.minValue;
    return j;
}

Json toJson(const ConditionLadder& ladder) {
    Json j;
    j["schemaVersion"] = kSchemaVersion;
    Json conds;
    for (const auto& [key, verdict] : ladder.conditions) {
        Json c;
        switch (verdict.v) {
            case TV::True: c["verdict"] = "holds"; break;
            case TV::False: c["verdict"] = "fails"; break;
            case TV::Unknown: c["verdict"] = "undecided"; break;
        }
        c["evidence"] = verdict.evidence;
        conds[key] = std::move(c);
    }
    j["conditions"] = std::move(conds);
    Json reps = Json::array();
    for (const auto& ev : ladder.reps) {
        Json r;
        r["name"] = ev.name;
        r["boundedBelow"] = toJson(ev.lower);
        r["adjointBoundedBelow"] = toJson(ev.adjointLower);
        if (ev.symbol) r["symbol"] = toJson(*ev.symbol);
        reps.push_back(std::move(r));
    }
    j["representatives"] = std::move(reps);
    if (ladder.normIdentity) j["normIdentity"] = *ladder.normIdentity;
    j["favardGapNoted"] = ladder.favardGapNoted;
    j["crossCheck"] = toJson(ladder.crossCheck);
    j["consistent"] = ladder.consistent;
    j["notes"] = ladder.notes;
    j["conclusion"] = ladder.conclusion;
    return j;
}

Json toJson(const TsemiTrace& trace) {
    Json j;
    j["schemaVersion"] = kSchemaVersion;
    j["m"] = trace.m;
    j["eps"] = trace.eps;
    j["epsAuto"] = trace.epsAuto;
    j["chosenL"] = trace.chosenL;
    Json defects = Json::array();
    for (const auto& row : trace.defects) defects.push_back(Json{{"n", row.n}, {"defect", row.defect}});
    j["defects"] = std::move(defects);
    Json idx = Json::array();
    for (const auto& row : trace.indexChecks)
        idx.push_back(Json{{"n", row.n},
                           {"rowDim", row.rowDim},
                           {"colDim", row.colDim},
                           {"k", row.k},
                           {"holds", row.holds}});
    j["indexChecks"] = std::move(idx);
    j["estimate"] = trace.estimate;
    j["estimateStable"] = trace.estimateStable;
    Json chain = Json::array();
    for (const auto& row : trace.chain)
        chain.push_back(Json{{"n", row.n}, {"slmB", row.slmB}, {"slack", row.slack}});
    j["chain"] = std::move(chain);
    j["indexHolds"] = trace.indexHolds;
    j["chainHolds"] = trace.chainHolds;
    return j;
}

Json toJson(const std::vector<PStrongRow>& rows) {
    Json j = Json::array();
    for (const auto& row : rows) {
        Json r;
        r["step"] = row.step;
        Json h = Json::array();
        for (int a = 0; a < row.h.dim; ++a) h.push_back(row.h[a]);
        r["h"] = std::move(h);
        r["window"] = row.window;
        r["defect"] = row.defect;
        j.push_back(std::move(r));
    }
    return j;
}

BandOperator loadOperator(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open operator file: " + path);
    Json j = Json::parse(in);
    return operatorFromJson(j);
}

void saveOperator(const BandOperator& op, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write operator file: " + path);
    out << toJson(op).dump(2) << '\n';
}

}  // namespace bandlab
