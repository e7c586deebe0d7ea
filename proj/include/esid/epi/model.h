/*
* Copyright (C) 2026 ESID contributors
*
* Licensed under the Apache License, Version 2.0 (the "License");
* you may not use this file except in compliance with the License.
* You may obtain a copy of the License at
*
*     http://www.apache.org/licenses/LICENSE-2.0
*
* Unless required by applicable law or agreed to in writing, software
* distributed under the License is distributed on an "AS IS" BASIS,
* WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
* See the License for the specific language governing permissions and
* limitations under the License.
*/
#ifndef ESID_EPI_MODEL_H
#define ESID_EPI_MODEL_H

#include "esid/epi/compartments.h"
#include "esid/epi/parameters.h"

#include <functional>
#include <span>
#include <vector>

namespace esid
{

/// Default integration step in days.
inline constexpr double kDefaultDt = 0.1;

/// Maximum mass (relative to group population) that may be clamped away in one step.
inline constexpr double kMaxClampedFraction = 1e-9;

/**
 * Contacts per day between age groups on `day`, after applying all dampings active that day.
 * Overlapping dampings on the same location compose multiplicatively.
 */
ContactMatrix effective_contacts(const ContactMatrices& base, std::span<const Damping> dampings, int day);

/**
 * Per-group rate at which susceptibles become exposed (1/day).
 * The mixing population of a group excludes the dead.
 */
std::vector<double> force_of_infection(const CompartmentTensor& state, const EpiParameters& params,
                                       const ContactMatrix& contacts);

/// Time derivative of the compartment chain S -> E -> C -> I -> H -> U -> D with recovery branches.
CompartmentTensor rhs(const CompartmentTensor& state, const EpiParameters& params, const ContactMatrix& contacts);

using DerivativeFunction = std::function<CompartmentTensor(double t, const CompartmentTensor& state)>;

struct StepResult {
    CompartmentTensor state;
    double clamped_mass = 0.0; ///< total of negative entries set to zero
};

/**
 * One classical Runge-Kutta step of size dt starting at time t.
 * Negative results are clamped to zero; the run fails if the clamped mass of a group exceeds
 * kMaxClampedFraction of its population.
 */
StepResult step_rk4(const CompartmentTensor& state, const DerivativeFunction& derivative, double t, double dt);

/// Number of steps per day for dt; throws ValidationError unless dt divides one day evenly.
int steps_per_day(double dt);

/// Integrates one district over the single day [day, day + 1).
CompartmentTensor advance_day(const CompartmentTensor& state, const EpiParameters& params,
                              const ContactMatrices& contacts, std::span<const Damping> dampings, int day, double dt);

/**
 * Simulates a single district and returns the state at every integer day 0..num_days.
 */
std::vector<CompartmentTensor> simulate_node(const CompartmentTensor& initial, const EpiParameters& params,
                                             const ContactMatrices& contacts, std::span<const Damping> dampings,
                                             int num_days, double dt = kDefaultDt);

} // namespace esid

#endif // ESID_EPI_MODEL_H
