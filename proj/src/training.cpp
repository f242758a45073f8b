// SPDX-License-Identifier: Apache-2.0
#include "qis/training.hpp"

#include <cmath>

namespace qis {

namespace {

constexpr double kLogFloor = 1e-12;

void check_config(const SpsaConfig& cfg) {
    if (cfg.iterations < 0) throw ValidationError("SpsaConfig: negative iteration count");
    if (!(cfg.a > 0.0) || !(cfg.c > 0.0))
        throw ValidationError("SpsaConfig: gains a and c must be positive");
    if (!(cfg.alpha > 0.0 && cfg.alpha <= 1.0) || !(cfg.gamma_exp > 0.0 && cfg.gamma_exp <= 1.0))
        throw ValidationError("SpsaConfig: alpha and gamma_exp must lie in (0, 1]");
}

void check_dataset(const TrainingData& data, std::size_t n_outcomes) {
    if (data.states.empty() || data.states.size() != data.labels.size())
        throw ValidationError("TrainingData: need matching non-empty states and labels");
    for (int label : data.labels)
        if (label < 0 || static_cast<std::size_t>(label) >= n_outcomes)
            throw ValidationError("TrainingData: label " + std::to_string(label) +
                                  " has no projector");
}

std::vector<std::vector<double>> outcome_probs(const QcnnModel& model, const TrainingData& data,
                                               const MeasurementFamily& projectors) {
    std::vector<std::vector<double>> probs(data.states.size());
    parallel_for(data.states.size(), [&](std::size_t i) {
        probs[i] = measure_probs(apply_channel_pure(data.states[i], model), projectors);
    });
    return probs;
}

}  // namespace

MeasurementFamily training_projectors(Task task) {
    ComplexVector plus(2), minus(2);
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    minus << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
    if (task == Task::two_class)
        return MeasurementFamily::projective_from_states({plus, minus});

    std::vector<ComplexVector> states;
    for (const auto& first : {plus, minus})
        for (const auto& second : {plus, minus}) {
            ComplexVector v(4);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) v[2 * i + j] = first[i] * second[j];
            states.push_back(v);
        }
    return MeasurementFamily::projective_from_states(states);
}

double cross_entropy_from_probs(const std::vector<double>& correct_probs) {
    if (correct_probs.empty()) throw ValidationError("cross_entropy: empty dataset");
    const double r = static_cast<double>(correct_probs.size());
    double acc = 0.0;
    for (double p : correct_probs) acc += std::log(std::max(p, kLogFloor));
    return -acc / r + std::log(r);
}

double cross_entropy_loss(const QcnnModel& model, const TrainingData& data,
                          const MeasurementFamily& projectors) {
    check_dataset(data, projectors.size());
    const auto probs = outcome_probs(model, data, projectors);
    std::vector<double> correct(data.states.size());
    for (std::size_t i = 0; i < data.states.size(); ++i)
        correct[i] = probs[i][static_cast<std::size_t>(data.labels[i])];
    return cross_entropy_from_probs(correct);
}

std::vector<double> spsa_core(std::vector<double> initial,
                              const std::function<double(const std::vector<double>&)>& loss,
                              const SpsaConfig& cfg, std::vector<double>* loss_trace,
                              std::vector<double>* grad_norms) {
    check_config(cfg);
    std::mt19937_64 rng(cfg.seed);
    std::vector<double> theta = std::move(initial);
    const std::size_t dim = theta.size();

    if (loss_trace) {
        loss_trace->clear();
        loss_trace->push_back(loss(theta));
    }
    if (grad_norms) grad_norms->clear();

    std::vector<double> delta(dim), plus(dim), minus(dim);
    for (int k = 0; k < cfg.iterations; ++k) {
        const double ck = cfg.c / std::pow(k + 1.0, cfg.gamma_exp);
        const double ak = cfg.a / std::pow(k + 1.0 + cfg.big_a, cfg.alpha);

        for (std::size_t i = 0; i < dim; ++i) delta[i] = rademacher(rng);
        for (std::size_t i = 0; i < dim; ++i) {
            plus[i] = theta[i] + ck * delta[i];
            minus[i] = theta[i] - ck * delta[i];
        }
        const double f_plus = loss(plus);
        const double f_minus = loss(minus);
        if (!std::isfinite(f_plus) || !std::isfinite(f_minus))
            throw Error("spsa: non-finite loss at step " + std::to_string(k));

        const double scale = (f_plus - f_minus) / (2.0 * ck);
        double norm_sq = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            const double g = scale * delta[i];  // 1/delta_i = delta_i for +-1
            theta[i] -= ak * g;
            norm_sq += g * g;
        }
        if (grad_norms) grad_norms->push_back(std::sqrt(norm_sq));
        if (loss_trace) loss_trace->push_back(loss(theta));
    }
    return theta;
}

TrainedModel spsa_minimize(const QcnnModel& initial, const TrainingData& data,
                           const MeasurementFamily& projectors, const SpsaConfig& cfg) {
    check_dataset(data, projectors.size());
    const Task task = initial.task;
    auto loss = [&](const std::vector<double>& params) {
        return cross_entropy_loss(QcnnModel{task, params}, data, projectors);
    };

    TrainedModel result;
    result.model.task = task;
    result.model.params =
        spsa_core(initial.params, loss, cfg, &result.loss_trace, &result.grad_norms);
    result.final_loss = result.loss_trace.back();
    return result;
}

double accuracy(const QcnnModel& model, const TrainingData& data,
                const MeasurementFamily& projectors) {
    check_dataset(data, projectors.size());
    const auto probs = outcome_probs(model, data, projectors);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < data.states.size(); ++i) {
        std::size_t best = 0;
        for (std::size_t j = 1; j < probs[i].size(); ++j)
            if (probs[i][j] > probs[i][best]) best = j;  // ties keep the lowest index
        if (static_cast<int>(best) == data.labels[i]) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(data.states.size());
}

QcnnModel random_init(Task task, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    QcnnModel model;
    model.task = task;
    model.params.resize(param_count(task));
    for (double& p : model.params) p = uniform_range(rng, -M_PI / 10.0, M_PI / 10.0);
    return model;
}

}  // namespace qis
