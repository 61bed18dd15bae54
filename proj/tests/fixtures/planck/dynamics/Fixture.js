var Math = require('../common/Math');

function Fixture(density) {
  if (!Math.isFinite(density)) {
    density = 0;
  }
  this.m_density = density;
}

module.exports = Fixture;
