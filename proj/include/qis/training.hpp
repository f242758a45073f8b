// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>

#include "qis/qcnn.hpp"

namespace qis {

struct SpsaConfig {
    int iterations = 1500;
    double a = 0.2;
    double c = 0.1;
    double big_a = 150.0;
    double alpha = 0.602;
    double gamma_exp = 0.101;
    std::uint64_t seed = 0;
};

struct TrainedModel {
    QcnnModel model;
    std::vector<double> loss_trace;  // initial loss plus one entry per iteration
    std::vector<double> grad_norms;  // one gradient-estimate norm per iteration
    double final_loss = 0.0;
};

/// Pure ground states with their integer phase labels.
struct TrainingData {
    std::vector<ComplexVector> states;
    std::vector<int> labels;
};

/// Fixed X-type training bases: {|+>, |->} for 2-class, the |+-,+-> products
/// for 3-class (projector index = label index).
MeasurementFamily training_projectors(Task task);

/// -(1/r) sum ln p_i + ln r with one-hot truth; probabilities are floored at
/// 1e-12 inside the log.
double cross_entropy_from_probs(const std::vector<double>& correct_probs);

double cross_entropy_loss(const QcnnModel& model, const TrainingData& data,
                          const MeasurementFamily& projectors);

/// Generic SPSA loop: two perturbed evaluations per step with Rademacher
/// directions, gains a_k = a/(k+1+A)^alpha and c_k = c/(k+1)^gamma. The
/// perturbation is drawn before the evaluations so the RNG stream does not
/// depend on scheduling. Throws on a non-finite loss, naming the step.
std::vector<double> spsa_core(std::vector<double> initial,
                              const std::function<double(const std::vector<double>&)>& loss,
                              const SpsaConfig& cfg, std::vector<double>* loss_trace,
                              std::vector<double>* grad_norms);

TrainedModel spsa_minimize(const QcnnModel& initial, const TrainingData& data,
                           const MeasurementFamily& projectors, const SpsaConfig& cfg);

/// Fraction of samples whose argmax outcome probability matches the label;
/// argmax ties resolve toward the lowest label index.
double accuracy(const QcnnModel& model, const TrainingData& data,
                const MeasurementFamily& projectors);

/// Parameters drawn uniformly from [-pi/10, pi/10].
QcnnModel random_init(Task task, std::uint64_t seed);

}  // namespace qis
