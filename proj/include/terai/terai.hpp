#ifndef TERAI_TERAI_HPP
#define TERAI_TERAI_HPP

#include "terai/bigint.hpp"
#include "terai/certificate_io.hpp"
#include "terai/errors.hpp"
#include "terai/form.hpp"
#include "terai/modular.hpp"
#include "terai/pipeline.hpp"
#include "terai/report.hpp"
#include "terai/representation.hpp"

#endif
