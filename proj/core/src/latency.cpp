#include "channeldance/latency.hpp"

#include <cmath>
#include <stdexcept>

namespace channeldance::edge {

LatencyModel LatencyModel::mcu() { return LatencyModel{}; }

LatencyModel LatencyModel::laptop() {
  LatencyModel m;
  m.controller_forward_us = 1800.0;
  m.uart_baud = 115'200.0;
  m.spi_hz = 1'000'000.0;
  return m;
}

double uart_time_us(int bytes, double baud) {
  if (baud <= 0) throw std::domain_error("uart baud rate must be positive");
  if (bytes < 0) throw std::domain_error("negative byte count");
  return bytes * 10.0 * 1e6 / baud;
}

double spi_time_us(int bytes, double clock_hz) {
  if (clock_hz <= 0) throw std::domain_error("spi clock must be positive");
  if (bytes < 0) throw std::domain_error("negative byte count");
  return bytes * 8.0 * 1e6 / clock_hz;
}

DelayBreakdown forwarding_delay(const LatencyModel& model, int payload_bytes) {
  DelayBreakdown b;
  b.ble_rx_chain_us = model.ble_rx_chain_us;
  b.uart_us = uart_time_us(payload_bytes, model.uart_baud);
  b.controller_forward_us = model.controller_forward_us;
  b.ask_tx_chain_us = model.ask_tx_chain_us;
  b.spi_us = spi_time_us(payload_bytes, model.spi_hz);
  b.tag_decode_us = model.tag_decode_us;
  b.clock_reconfig_us = model.clock_reconfig_us;
  return b;
}

double plm_delay_ms(int payload_bytes, double packet_interval_ms, int symbol_bits) {
  if (packet_interval_ms <= 0) throw std::domain_error("packet interval must be positive");
  if (symbol_bits < 1) throw std::domain_error("symbol bits must be at least 1");
  if (payload_bytes < 0) throw std::domain_error("negative byte count");
  const double symbols = std::ceil(payload_bytes * 8.0 / symbol_bits);
  return symbols * packet_interval_ms;
}

}  // namespace channeldance::edge
