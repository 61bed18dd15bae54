var handler = require("./handler");
var format = require("./format");

console.log(format.pad(handler.handle("x"), 8));
